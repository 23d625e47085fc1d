use std::f64::consts::LN_2;

use num_complex::Complex64;
use serde::Serialize;

use super::{
    chern_simons, chern_simons_numerator, growth_coefficients, q_infinity, volume, ESign, ETerm,
    GaussianForm,
};
use crate::arith::{LogComplex, Precision};
use crate::error::{Error, Result};
use crate::invariant::{ChainParams, SinePrefix};
use crate::special::QuadratureSpec;

/// Settings shared by the prediction routines.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct PredictOptions {
    pub e_sign: ESign,
    pub form: GaussianForm,
    pub quad: QuadratureSpec,
}

/// Asymptotic data of a chain:
/// `J_N ~ exp((1/2pi) ((vol + i cs) N + d_coeff log N + E))`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Prediction {
    pub vol: f64,
    pub cs: f64,
    pub d_coeff: f64,
    pub e_term: ETerm,
    /// Present for `b = 1` with at least one clasp.
    pub q_inf: Option<Complex64>,
    /// Sign convention used for `e_term` when `b >= 2`.
    pub e_sign: Option<ESign>,
}

/// Assemble the predicted constants.
///
/// `b = 1` with no clasps and `a != 0` is a quadratic Gauss sum outside the
/// theory and is rejected. With `a = 0` the chain is split, so the constants
/// are still reported but no `q_inf` is attached.
pub fn prediction(params: &ChainParams, opts: &PredictOptions) -> Result<Prediction> {
    if params.b() == 1 && params.clasps() == 0 && params.a() != 0 {
        return Err(Error::Unsupported(format!(
            "{params}: b = 1 with c + d = 0 and a != 0 gives a quadratic Gauss sum with no predicted asymptotics"
        )));
    }
    let (d_coeff, e_term) = growth_coefficients(params, opts.e_sign);
    let q_inf = if params.b() == 1 && params.clasps() > 0 {
        Some(q_infinity(params, &opts.quad, opts.form)?)
    } else {
        None
    };
    Ok(Prediction {
        vol: volume(params),
        cs: chern_simons(params),
        d_coeff,
        e_term,
        q_inf,
        e_sign: (params.b() >= 2).then_some(opts.e_sign),
    })
}

/// `exp(i CS N / 2 pi)`, reduced exactly: `CS N / 2 pi = m N pi / 8`.
pub fn cs_phase(params: &ChainParams, color: usize) -> LogComplex {
    let num = i128::from(chern_simons_numerator(params)) * color as i128;
    LogComplex::unit_pi_fraction(num, 8, Precision::default())
}

fn check_prefix(prefix: &SinePrefix, color: usize) -> Result<()> {
    if prefix.color() != color {
        return Err(Error::InvalidParams(format!(
            "sine table is for N = {}, asked for N = {color}",
            prefix.color()
        )));
    }
    Ok(())
}

/// Right-hand side of the leading-order asymptotic with the exact `S~_N`.
///
/// `b = 1`: `Q_inf N^{(c+d+3)/2} S~^{c+d} exp(i CS N / 2pi)`.
/// `b >= 2` (odd `N`): `exp(E_re / 2pi) 2^{(c+d)/2} psi N^{(c+d)/2 + b} S~^{c+d} exp(i CS N / 2pi)`,
/// which for the negative sign is the prefactor `2^{-(c+d)/2}`.
pub fn predicted_jones(
    params: &ChainParams,
    color: usize,
    prefix: &SinePrefix,
    opts: &PredictOptions,
) -> Result<LogComplex> {
    check_prefix(prefix, color)?;
    let cd = params.clasps() as f64;
    let ln_n = (color as f64).ln();
    let log_tilde = prefix.log_s_max();
    let front = if params.b() == 1 {
        let q = q_infinity(params, &opts.quad, opts.form)?;
        LogComplex::from_cartesian(q.re, q.im)
            .mul(&LogComplex::from_log_mag((cd + 3.0) / 2.0 * ln_n))
    } else {
        if color % 2 == 0 {
            return Err(Error::Domain(format!(
                "{params}: the b >= 2 asymptotic holds for odd N only (N = {color})"
            )));
        }
        let log_mag = opts.e_sign.factor() * cd * LN_2
            + cd / 2.0 * LN_2
            + (cd / 2.0 + params.b() as f64) * ln_n;
        let m = i128::from(4 * params.a() + 3 * params.c() - 3 * params.d());
        LogComplex::unit_pi_fraction(m, 4, Precision::default())
            .mul(&LogComplex::from_log_mag(log_mag))
    };
    Ok(front
        .mul(&LogComplex::from_log_mag(cd * log_tilde))
        .mul(&cs_phase(params, color)))
}

/// Normalized quotient `Q_N = J_N N^{-(c+d+3)/2} S~_N^{-(c+d)} exp(-i CS N / 2pi)`.
pub fn normalized_quotient(
    params: &ChainParams,
    color: usize,
    jones: &LogComplex,
    prefix: &SinePrefix,
) -> Result<LogComplex> {
    check_prefix(prefix, color)?;
    let cd = params.clasps() as f64;
    let scale = -(cd + 3.0) / 2.0 * (color as f64).ln() - cd * prefix.log_s_max();
    Ok(jones
        .mul(&LogComplex::from_log_mag(scale))
        .mul(&cs_phase(params, color).conj()))
}
