//! Predicted large-`N` behaviour and coefficient extraction.
//!
//! For a chain with `c + d` clasps the expansion reads
//! `J_N ~ exp((1/2pi) ((Vol + i CS) N + D log N + E))` with
//! `Vol = 8 (c+d) Lambda(pi/4)`. For `b = 1` the constant term comes from a
//! Gaussian integral `Q_inf`; for `b >= 2` it is explicit and only odd `N`
//! carry a nonzero invariant.

mod constants;
mod fit;
mod limit;
mod predict;

pub use constants::{
    chern_simons, chern_simons_numerator, growth_coefficients, volume, ESign, ETerm,
};
pub use fit::{fit_expansion, FitResult};
pub use limit::{psi, q_infinity, q_infinity_signed_closed_form, GaussianForm};
pub use predict::{
    cs_phase, normalized_quotient, predicted_jones, prediction, PredictOptions, Prediction,
};
