use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use super::{decreasing, LemmaId, LemmaReport};
use crate::arith::{LogComplex, Precision};
use crate::asymptote::{
    fit_expansion, normalized_quotient, predicted_jones, prediction, q_infinity, ESign,
    GaussianForm, PredictOptions,
};
use crate::error::{Error, Result};
use crate::invariant::{jones_at_root, sine_prefix, ChainParams};

// |x - 1| below this counts as exact
const EXACT: f64 = 1e-12;

fn check_ladder(ladder: &[usize]) -> Result<()> {
    if ladder.is_empty() {
        return Err(Error::InvalidParams("empty N ladder".into()));
    }
    if let Some(n) = ladder.iter().find(|&&n| n % 2 == 0) {
        return Err(Error::InvalidParams(format!(
            "ladder must be odd, got N = {n}"
        )));
    }
    if ladder.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidParams(
            "ladder must be strictly increasing".into(),
        ));
    }
    Ok(())
}

fn sign_name(sign: ESign) -> &'static str {
    match sign {
        ESign::Negative => "negative",
        ESign::Positive => "positive",
    }
}

fn form_name(form: GaussianForm) -> &'static str {
    match form {
        GaussianForm::Signed => "signed",
        GaussianForm::Folded => "folded",
    }
}

fn cartesian(z: &LogComplex) -> Result<Complex64> {
    let (re, im) = z.to_cartesian()?;
    Ok(Complex64::new(re, im))
}

/// Convergence of `J_N` to its leading-order prediction along an odd ladder.
///
/// `b = 1` (needs `c + d >= 1`): `Q_N -> Q_inf`; passes iff `|Q_N - Q_inf|` and
/// `|arg(Q_N / Q_inf)|` both decrease, with final values under
/// `0.05 |Q_inf|` and `0.05` rad. `Q_inf` uses `opts.form`; the distance to
/// the other Gaussian form is listed too.
///
/// `b >= 2`: `|J_N / predicted - 1|` under both signs of `Re E`; passes iff
/// exactly one sign gives a decreasing sequence ending below `0.05` (or, with
/// no clasps, where the signs coincide, iff the ratio is 1).
pub fn verify_lemma45(
    params: &ChainParams,
    ladder: &[usize],
    opts: &PredictOptions,
) -> Result<LemmaReport> {
    check_ladder(ladder)?;
    if params.b() == 1 && params.clasps() == 0 {
        return Err(Error::Unsupported(format!(
            "{params}: the Q_N limit needs c + d >= 1"
        )));
    }
    let prec = Precision::default();
    let exact: Vec<(usize, LogComplex)> = ladder
        .par_iter()
        .map(|&color| Ok((color, jones_at_root(params, color, prec)?)))
        .collect::<Result<_>>()?;
    if params.b() == 1 {
        quotient_report(params, &exact, opts)
    } else {
        ratio_report(params, &exact, opts)
    }
}

fn quotient_report(
    params: &ChainParams,
    exact: &[(usize, LogComplex)],
    opts: &PredictOptions,
) -> Result<LemmaReport> {
    let q_inf = q_infinity(params, &opts.quad, opts.form)?;
    let other_form = match opts.form {
        GaussianForm::Signed => GaussianForm::Folded,
        GaussianForm::Folded => GaussianForm::Signed,
    };
    let q_other = q_infinity(params, &opts.quad, other_form)?;
    let mut report = LemmaReport::new(LemmaId::L4Qn);
    report.push("q_inf_re", q_inf.re);
    report.push("q_inf_im", q_inf.im);
    let (mut dists, mut args) = (Vec::new(), Vec::new());
    for (color, j) in exact {
        let prefix = sine_prefix(*color)?;
        let q = cartesian(&normalized_quotient(params, *color, j, &prefix)?)?;
        let dist = (q - q_inf).norm();
        let arg = (q / q_inf).arg();
        report.push(format!("q_n_re[N={color}]"), q.re);
        report.push(format!("q_n_im[N={color}]"), q.im);
        report.push(format!("distance[N={color}]"), dist);
        report.push(format!("arg_ratio[N={color}]"), arg);
        report.push(
            format!("distance_{}_form[N={color}]", form_name(other_form)),
            (q - q_other).norm(),
        );
        dists.push(dist);
        args.push(arg.abs());
    }
    let (last_dist, last_arg) = (
        *dists.last().expect("non-empty"),
        *args.last().expect("non-empty"),
    );
    report.passed = decreasing(&dists, EXACT)
        && decreasing(&args, EXACT)
        && last_dist < 0.05 * q_inf.norm()
        && last_arg < 0.05;
    report.note(format!(
        "{params}, Q_inf from the {} Gaussian form",
        form_name(opts.form)
    ));
    Ok(report)
}

fn ratio_report(
    params: &ChainParams,
    exact: &[(usize, LogComplex)],
    opts: &PredictOptions,
) -> Result<LemmaReport> {
    let mut report = LemmaReport::new(LemmaId::L5Ratio);
    let mut converging = Vec::new();
    for sign in [ESign::Negative, ESign::Positive] {
        let opts = PredictOptions {
            e_sign: sign,
            ..*opts
        };
        let mut devs = Vec::new();
        for (color, j) in exact {
            let prefix = sine_prefix(*color)?;
            let pred = predicted_jones(params, *color, &prefix, &opts)?;
            let ratio = cartesian(&j.mul(&pred.recip()?))?;
            let dev = (ratio - 1.0).norm();
            report.push(
                format!("ratio_deviation_{}[N={color}]", sign_name(sign)),
                dev,
            );
            devs.push(dev);
        }
        let ok = decreasing(&devs, EXACT) && *devs.last().expect("non-empty") < 0.05;
        report.push(
            format!("{}_sign_converges", sign_name(sign)),
            if ok { 1.0 } else { 0.0 },
        );
        if ok {
            converging.push(sign);
        }
    }
    if params.clasps() == 0 {
        report.passed = converging.len() == 2;
        report.note(format!(
            "{params}: no clasps, both sign conventions give the same prediction"
        ));
    } else {
        report.passed = converging.len() == 1;
        match converging[..] {
            [sign] => report.note(format!(
                "{params}: ratio converges to 1 under the {} sign of Re E",
                sign_name(sign)
            )),
            [] => report.note(format!(
                "{params}: ratio does not converge under either sign"
            )),
            _ => report.note(format!(
                "{params}: both signs converge, convention not resolved"
            )),
        }
    }
    Ok(report)
}

/// Tolerances for the main fit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FitTolerance {
    pub alpha: f64,
    pub beta: f64,
}

impl Default for FitTolerance {
    fn default() -> Self {
        Self {
            alpha: 1e-3,
            beta: 0.3,
        }
    }
}

/// Fit `log|J_N|` over `colors` and compare `alpha` with the volume and
/// `beta` with the `log N` coefficient.
pub fn verify_main_fit(
    params: &ChainParams,
    colors: &[usize],
    tol: FitTolerance,
    opts: &PredictOptions,
) -> Result<LemmaReport> {
    let pred = prediction(params, opts)?;
    let prec = Precision::default();
    let samples: Vec<(usize, f64)> = colors
        .par_iter()
        .map(|&color| {
            let j = jones_at_root(params, color, prec)?;
            if j.is_zero() {
                return Err(Error::InvalidParams(format!(
                    "{params}: J_N vanishes at N = {color}, use odd N"
                )));
            }
            Ok((color, *j.log_mag()))
        })
        .collect::<Result<_>>()?;
    let fit = fit_expansion(&samples)?;
    let mut report = LemmaReport::new(LemmaId::MainFit);
    report.fitted("alpha", fit.alpha);
    report.fitted("beta", fit.beta);
    report.fitted("gamma", fit.gamma);
    report.push("alpha_minus_vol", fit.alpha - pred.vol);
    report.push("beta_minus_d", fit.beta - pred.d_coeff);
    report.push("residual_rms", fit.residual_rms);
    report.passed =
        (fit.alpha - pred.vol).abs() <= tol.alpha && (fit.beta - pred.d_coeff).abs() <= tol.beta;
    report.note(format!(
        "{params}: {} samples, vol = {}, D = {}, tolerances alpha {} beta {}",
        samples.len(),
        pred.vol,
        pred.d_coeff,
        tol.alpha,
        tol.beta
    ));
    Ok(report)
}
