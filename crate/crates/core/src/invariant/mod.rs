//! Colored Jones invariants of Whitehead chains.
//!
//! At `t = exp(2 pi i / N)` the invariant has a closed form in terms of the
//! products `S_{n,k}`; [`jones_at_root`] evaluates it in the log domain with
//! all `S_{n,k}` read from a [`SinePrefix`] table. The tangle-product formula
//! at a generic point ([`jones_generic`]) is kept as an independent check via
//! [`limit_cross_check`].

mod generic;
mod params;
mod prefix;
mod root;

pub use generic::{
    jones_generic, limit_cross_check, quantum_integer, tangle_values, CrossCheckReport,
    EvaluationPoint, TangleValues, CROSS_CHECK_MAX_COLOR, DEFAULT_CROSS_CHECK_EPS,
};
pub use params::ChainParams;
pub use prefix::{sine_prefix, SinePrefix};
pub use root::{chi, chi_pow, jones_at_root, jones_at_root_in, phi};
