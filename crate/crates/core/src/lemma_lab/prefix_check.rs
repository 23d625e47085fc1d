use std::f64::consts::{FRAC_PI_4, PI, TAU};

use rayon::prelude::*;

use super::{decreasing, LemmaId, LemmaReport};
use crate::error::{Error, Result};
use crate::invariant::{sine_prefix, SinePrefix};
use crate::special::lobachevsky;

/// `r(N) = S~_N exp(-4 N Lambda(pi/4) / pi) sqrt(2N)`, which tends to 1.
pub fn max_term_ratio(prefix: &SinePrefix) -> f64 {
    let n = prefix.color() as f64;
    (prefix.log_s_max() - 4.0 * n * lobachevsky(FRAC_PI_4) / PI + 0.5 * (2.0 * n).ln()).exp()
}

/// `log S~_N` from the defining product, without the prefix table.
pub fn direct_log_s_max(color: usize) -> f64 {
    let (n, k) = (color / 2, color / 4);
    let sin = |j: usize| (j as f64 * PI / color as f64).sin();
    (1..=n)
        .map(|j| (2.0 * sin(k + j).powi(2) / sin(j)).ln())
        .sum()
}

/// `s_n - (N/pi) Lambda(n pi/N) + 1/2 log(n sin(r pi) / (r pi)) + 1/2 log(2 pi)`
/// with `r = n/N`, which is `O(1/N)`.
///
/// `None` for `n < N^0.6`, where `n/N` is too close to 0 for the expansion.
/// The constant `1/2 log(2 pi)` comes from Stirling's formula for the
/// `log(2 sin)` singularity at 0.
pub fn prefix_expansion_residual(prefix: &SinePrefix, n: usize) -> Option<f64> {
    let color = prefix.color();
    if n >= color || (n as f64) < (color as f64).powf(0.6) {
        return None;
    }
    let r = n as f64 / color as f64;
    let s = prefix.values()[n];
    let main = color as f64 / PI * lobachevsky(PI * r);
    Some(s - main + 0.5 * (n as f64 * (PI * r).sin() / (PI * r)).ln() + 0.5 * TAU.ln())
}

/// Growth of `S~_N` and the per-`n` prefix expansion over `colors`.
///
/// Passes iff `|r(N) - 1|` decreases along `colors`, is below `0.02` at the
/// largest `N`, and the per-`n` residuals at `n = N/2, N/4` are under `10/N`.
pub fn verify_lemma3(colors: &[usize]) -> Result<LemmaReport> {
    if colors.is_empty() {
        return Err(Error::InvalidParams("need at least one N".into()));
    }
    if let Some(n) = colors.iter().find(|&&n| n < 100) {
        return Err(Error::InvalidParams(format!("N = {n} is below 100")));
    }
    let rows: Vec<(usize, f64, Option<f64>, Option<f64>)> = colors
        .par_iter()
        .map(|&color| {
            let prefix = sine_prefix(color)?;
            let half = prefix_expansion_residual(&prefix, color / 2);
            let quarter = prefix_expansion_residual(&prefix, color / 4);
            Ok((color, max_term_ratio(&prefix), half, quarter))
        })
        .collect::<Result<_>>()?;

    let mut report = LemmaReport::new(LemmaId::L3);
    let mut deviations = Vec::with_capacity(rows.len());
    let mut expansion_ok = true;
    for &(color, r, half, quarter) in &rows {
        report.push(format!("r_minus_1[N={color}]"), r - 1.0);
        deviations.push((r - 1.0).abs());
        for (tag, v) in [("half", half), ("quarter", quarter)] {
            if let Some(v) = v {
                report.push(format!("s_expansion_{tag}[N={color}]"), v);
                expansion_ok &= v.abs() < 10.0 / color as f64;
            }
        }
        if let Some(v) = half {
            report.push(
                format!("s_expansion_half_without_stirling[N={color}]"),
                v - 0.5 * TAU.ln(),
            );
        }
    }
    let last = *deviations.last().expect("non-empty");
    report.passed = decreasing(&deviations, 0.0) && last < 0.02 && expansion_ok;
    report.note("per-n residual includes the Stirling constant 1/2 log(2 pi); the variant without it is listed for comparison");
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ratio_agrees_with_direct_product() {
        let prefix = sine_prefix(500).unwrap();
        let direct = direct_log_s_max(500);
        assert!((prefix.log_s_max() - direct).abs() < 1e-14 * direct.abs());
        assert!((max_term_ratio(&prefix) - 1.0).abs() < 0.01);
    }

    #[test]
    fn expansion_skips_small_n() {
        let prefix = sine_prefix(10_000).unwrap();
        assert!(prefix_expansion_residual(&prefix, 100).is_none());
        assert!(prefix_expansion_residual(&prefix, 10_000).is_none());
        let half = prefix_expansion_residual(&prefix, 5000).unwrap();
        assert!(half.abs() < 10.0 / 10_000.0, "{half}");
    }

    #[test]
    fn passes_on_ladder() {
        let report = verify_lemma3(&[1000, 10_000, 100_000]).unwrap();
        assert!(report.passed, "{report:?}");
        let r = |n: usize| report.residual(&format!("r_minus_1[N={n}]")).unwrap();
        assert!(r(1000).abs() > r(10_000).abs() && r(10_000).abs() > r(100_000).abs());
        assert!(r(100_000).abs() < 1e-4);
    }

    #[test]
    fn rejects_small_colors() {
        assert!(verify_lemma3(&[50]).is_err());
        assert!(verify_lemma3(&[]).is_err());
    }
}
