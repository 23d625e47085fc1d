use rayon::prelude::*;

use super::{ChainParams, SinePrefix};
use crate::arith::{LogComplex, MpFloat, Precision, Real};
use crate::error::{Error, Result};

/// `chi_{N,n}^e = exp(e n (n + 1 - N) pi i / (2N))`, reduced exactly mod `2 pi`.
pub fn chi_pow<R: Real>(color: usize, n: usize, e: i64, prec: Precision) -> LogComplex<R> {
    let color = color as i128;
    let n = n as i128;
    let den = 2 * color;
    let num = (i128::from(e) * n % (2 * den)) * ((n + 1 - color) % (2 * den)) % (2 * den);
    LogComplex::unit_pi_fraction(num, den, prec)
}

/// `chi_{N,n} = exp(n (n + 1 - N) pi i / (2N))`.
pub fn chi<R: Real>(color: usize, n: usize, prec: Precision) -> LogComplex<R> {
    chi_pow(color, n, 1, prec)
}

/// `phi_N`: `exp((N-1)(c-d) pi i / N)` when `c + d = 1`, otherwise `(-1)^{(N-1)(c-d)}`.
pub fn phi<R: Real>(params: &ChainParams, color: usize, prec: Precision) -> LogComplex<R> {
    let m = (color as i128 - 1) * i128::from(params.c() - params.d());
    if params.clasps() == 1 {
        LogComplex::unit_pi_fraction(m, color as i128, prec)
    } else {
        LogComplex::unit_pi_fraction(m.rem_euclid(2), 1, prec)
    }
}

/// `J_N(W_{a,b,c,d})` at `t = exp(2 pi i / N)` in the backend `R`.
///
/// `b = 1`: `phi_N sum_n (2n+1) chi_{N,n}^{4a-c+d} (sum_k S_{n,k})^{c+d}`, summed in
/// ascending `n`. `b >= 2`: exact zero for even `N`, otherwise the single
/// `n = (N-1)/2` term times `N^b`.
pub fn jones_at_root_in<R: Real>(
    params: &ChainParams,
    color: usize,
    prec: Precision,
) -> Result<LogComplex<R>> {
    if color == 0 {
        return Err(Error::InvalidParams("color N must be at least 1".into()));
    }
    if params.b() >= 2 && color % 2 == 0 {
        return Ok(LogComplex::zero(prec));
    }
    let prefix = SinePrefix::<R>::new(color, prec)?;
    let clasps = R::from_i64(params.clasps(), prec);
    let e = params.twist_exponent();
    let front = phi::<R>(params, color, prec);

    if params.b() >= 2 {
        let m = (color - 1) / 2;
        let log_mag = R::from_i64(params.b(), prec) * R::from_i64(color as i64, prec).ln()
            + clasps * prefix.log_clasp_sum(m)?;
        let term = LogComplex::from_log_mag(log_mag).mul(&chi_pow(color, m, e, prec));
        return Ok(front.mul(&term));
    }

    let terms: Vec<LogComplex<R>> = (0..color)
        .into_par_iter()
        .map(|n| {
            let mut log_mag = R::from_i64(2 * n as i64 + 1, prec).ln();
            if params.clasps() != 0 {
                let clasp = prefix.log_clasp_sum(n).expect("n < N");
                log_mag = log_mag + clasps.clone() * clasp;
            }
            LogComplex::from_log_mag(log_mag).mul(&chi_pow(color, n, e, prec))
        })
        .collect();
    Ok(front.mul(&LogComplex::sum(&terms)))
}

/// `J_N(W_{a,b,c,d})` at `t = exp(2 pi i / N)`.
///
/// Runs in `f64` for up to 16 digits and in [`MpFloat`] above; the result is
/// rounded to `f64` log-magnitude and phase either way.
pub fn jones_at_root(
    params: &ChainParams,
    color: usize,
    prec: Precision,
) -> Result<LogComplex<f64>> {
    if prec.is_extended() {
        Ok(jones_at_root_in::<MpFloat>(params, color, prec)?.to_f64())
    } else {
        jones_at_root_in::<f64>(params, color, prec)
    }
}
