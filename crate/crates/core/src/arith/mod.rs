//! Log-domain complex arithmetic and compensated summation.
//!
//! Every large quantity in the crate lives in [`LogComplex`], which keeps the
//! natural log of the magnitude and a normalized phase. Values such as
//! `e^1200` are then ordinary numbers. The scalar type is abstracted by
//! [`Real`], so the same code runs on `f64` or on [`MpFloat`] when a
//! [`Precision`] above 16 digits is requested.

mod logcomplex;
mod mpfloat;
mod precision;
mod real;
mod sum;

pub use logcomplex::{angle_diff, normalize_phase, LogComplex};
pub use mpfloat::MpFloat;
pub use precision::Precision;
pub use real::Real;
pub use sum::{compensated_sum, CompensatedSum};
