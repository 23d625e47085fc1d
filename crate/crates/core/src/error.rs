use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("invalid precision: {digits} digits (need at least {min})")]
    InvalidPrecision { digits: u32, min: u32 },

    #[error("zero raised to negative power {0}")]
    ZeroToNegativePower(i64),

    #[error("magnitude e^{log_mag} is not representable; stay in the log domain")]
    Overflow { log_mag: f64 },

    #[error("index out of range: n = {n}, k = {k} with N = {color}")]
    IndexOutOfRange { n: usize, k: usize, color: usize },

    #[error("vanishing denominator {factor} at the evaluation point")]
    VanishingDenominator { factor: String },

    #[error("[N] vanishes at h = {h}; use jones_at_root for t = exp(2 pi i / N)")]
    ResonantPoint { h: String },

    #[error("argument outside the domain: {0}")]
    Domain(String),

    #[error("unsupported parameters: {0}")]
    Unsupported(String),

    #[error("quadrature did not converge: estimate {estimate}, error bound {error_bound:e}")]
    Convergence { estimate: String, error_bound: f64 },

    #[error("least-squares fit failed: {0}")]
    Fit(String),
}
