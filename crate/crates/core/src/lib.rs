//! Colored Jones invariants of Whitehead chains at `t = exp(2 pi i / N)`.
//!
//! The crate evaluates `J_N(W_{a,b,c,d})` exactly in the log domain, computes
//! the predicted large-`N` behaviour (volume, Chern-Simons phase, `log N`
//! coefficient and constant term), and carries a set of numerical checks for
//! each estimate that the asymptotic expansion rests on.
//!
//! Module map:
//! - [`arith`]: log-magnitude/phase complex numbers, compensated sums, precision control
//! - [`special`]: Lobachevsky function, `erfc`, half-line quadrature
//! - [`invariant`]: exact root-of-unity evaluation plus the generic-`t` tangle formula
//! - [`asymptote`]: predicted asymptotic data and least-squares extraction
//! - [`lemma_lab`]: estimate-level verification reports

pub mod arith;
pub mod asymptote;
mod error;
pub mod invariant;
pub mod lemma_lab;
pub mod special;

pub use arith::{LogComplex, Precision};
pub use error::{Error, Result};
pub use invariant::ChainParams;
