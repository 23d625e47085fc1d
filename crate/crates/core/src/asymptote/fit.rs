use std::collections::BTreeSet;
use std::f64::consts::TAU;

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use crate::error::{Error, Result};

/// Coefficients of `log|J_N| = (alpha N + beta log N + gamma) / 2pi`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FitResult {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    /// RMS of the residuals in `log|J_N|`.
    pub residual_rms: f64,
}

impl FitResult {
    pub fn predict(&self, color: usize) -> f64 {
        let n = color as f64;
        (self.alpha * n + self.beta * n.ln() + self.gamma) / TAU
    }
}

/// Least-squares fit of `(N, log|J_N|)` samples.
///
/// Needs at least four samples with distinct `N`, at least three of them
/// distinct for the model to be identifiable. Columns are scaled before an
/// SVD solve so that `N ~ 10^3` and `1` do not swamp each other.
pub fn fit_expansion(samples: &[(usize, f64)]) -> Result<FitResult> {
    if samples.len() < 4 {
        return Err(Error::Fit(format!(
            "need at least 4 samples, got {}",
            samples.len()
        )));
    }
    if let Some((n, v)) = samples.iter().find(|(n, v)| !v.is_finite() || *n == 0) {
        return Err(Error::Fit(format!(
            "sample (N = {n}, log|J| = {v}) is not usable"
        )));
    }
    let distinct: BTreeSet<usize> = samples.iter().map(|s| s.0).collect();
    if distinct.len() < 3 {
        return Err(Error::Fit(format!(
            "rank-deficient design: only {} distinct N",
            distinct.len()
        )));
    }
    if distinct.len() != samples.len() {
        return Err(Error::Fit("sample N values must be distinct".into()));
    }

    let rows = samples.len();
    let columns = |n: usize| {
        let x = n as f64;
        [x, x.ln(), 1.0]
    };
    let mut scale = [0.0f64; 3];
    for &(n, _) in samples {
        for (s, v) in scale.iter_mut().zip(columns(n)) {
            *s = s.max(v.abs());
        }
    }
    let a = DMatrix::from_fn(rows, 3, |i, j| columns(samples[i].0)[j] / scale[j]);
    let b = DVector::from_iterator(rows, samples.iter().map(|s| TAU * s.1));
    let svd = a.clone().svd(true, true);
    let sv = &svd.singular_values;
    let (max_sv, min_sv) = (sv.max(), sv.min());
    if !(min_sv > 1e-12 * max_sv) {
        return Err(Error::Fit(format!(
            "design matrix is singular (condition {:e})",
            max_sv / min_sv
        )));
    }
    let x = svd.solve(&b, 0.0).map_err(|e| Error::Fit(e.to_string()))?;
    let residual = (&a * &x - &b) / TAU;
    let residual_rms = (residual.norm_squared() / rows as f64).sqrt();
    Ok(FitResult {
        alpha: x[0] / scale[0],
        beta: x[1] / scale[1],
        gamma: x[2] / scale[2],
        residual_rms,
    })
}
