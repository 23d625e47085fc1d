//! Acceptance suite: one PASS/FAIL line per criterion, tolerances pinned below.
//!
//! Runs without the libtest harness so every line is printed; the process
//! exits non-zero if any criterion fails.

use std::f64::consts::{FRAC_PI_4, PI};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use chainvol::asymptote::{volume, PredictOptions};
use chainvol::invariant::{jones_at_root, limit_cross_check, DEFAULT_CROSS_CHECK_EPS};
use chainvol::lemma_lab::{
    default_delta, verify_critical_point, verify_lemma2, verify_lemma3, verify_lemma45,
    verify_main_fit, FitTolerance, LemmaReport,
};
use chainvol::special::lobachevsky;
use chainvol::{ChainParams, LogComplex, Precision};

const IDENTITY_TOL: f64 = 1e-10;
const IDENTITY_BUDGET: Duration = Duration::from_secs(1);
const CROSS_CHECK_TOL: f64 = 1e-6;
const CROSS_CHECK_BUDGET: Duration = Duration::from_secs(30);
const WHITEHEAD_ALPHA_TOL: f64 = 1e-3;
const BORROMEAN_ALPHA_TOL: f64 = 2e-3;
const BETA_TOL: f64 = 0.3;
const RATIO_TOL: f64 = 0.05;
const PREFIX_TOL: f64 = 0.02;
const PREFIX_BUDGET: Duration = Duration::from_secs(1);
const SLOPE_TOL: f64 = 0.3;
const ROOT_TOL: f64 = 1e-8;
const HESSIAN_TOL: f64 = 1e-4;
// (D log N + Re E) / N at N = 1601 for W_{0,2,1,0} is about 0.055
const ODD_SCAN_GAP: f64 = 0.1;

struct Outcome {
    passed: bool,
    detail: String,
}

fn p(a: i64, b: i64, c: i64, d: i64) -> ChainParams {
    ChainParams::new(a, b, c, d).expect("valid chain")
}

fn prec() -> Precision {
    Precision::default()
}

fn residual(report: &LemmaReport, label: &str) -> f64 {
    report.residual(label).unwrap_or(f64::NAN)
}

fn exact_identities() -> Outcome {
    let start = Instant::now();
    let mut worst = 0.0f64;
    let mut nonzero_even = 0;
    for a in -2..=2 {
        for b in 1..=3 {
            for c in 0..=2 {
                for d in 0..=2 {
                    let params = p(a, b, c, d);
                    let j1 = jones_at_root(&params, 1, prec()).expect("N = 1");
                    worst = worst.max(j1.relative_distance(&LogComplex::one(prec())));
                    if b >= 2 {
                        for n in [2, 4, 10, 50, 100] {
                            if !jones_at_root(&params, n, prec()).expect("even N").is_zero() {
                                nonzero_even += 1;
                            }
                        }
                    }
                }
            }
        }
    }
    for n in 1..=99usize {
        let ln = (n as f64).ln();
        let split = jones_at_root(&p(0, 1, 0, 0), n, prec()).expect("split chain");
        worst = worst.max(split.relative_distance(&LogComplex::from_log_mag(2.0 * ln)));
        if n % 2 == 1 {
            for b in 2..=3 {
                let belts = jones_at_root(&p(0, b, 0, 0), n, prec()).expect("belts");
                worst =
                    worst.max(belts.relative_distance(&LogComplex::from_log_mag(b as f64 * ln)));
            }
        }
    }
    let elapsed = start.elapsed();
    Outcome {
        passed: worst < IDENTITY_TOL && nonzero_even == 0 && elapsed < IDENTITY_BUDGET,
        detail: format!(
            "J_1 = 1, even-N zeros ({nonzero_even} nonzero), N^b powers: max rel err {worst:.1e} (tol {IDENTITY_TOL:.0e}), {elapsed:.2?} (budget {IDENTITY_BUDGET:?})"
        ),
    }
}

fn oracle_equivalence() -> Outcome {
    let start = Instant::now();
    let mut worst = 0.0f64;
    let mut errors = 0;
    for params in [
        p(0, 1, 1, 0),
        p(0, 1, 1, 1),
        p(1, 1, 1, 0),
        p(0, 2, 1, 1),
        p(-1, 2, 0, 1),
    ] {
        for n in [2, 3, 5, 7] {
            match limit_cross_check(&params, n, &DEFAULT_CROSS_CHECK_EPS) {
                Ok(r) => worst = worst.max(r.relative_deviation),
                Err(_) => errors += 1,
            }
        }
    }
    let elapsed = start.elapsed();
    Outcome {
        passed: errors == 0 && worst < CROSS_CHECK_TOL && elapsed < CROSS_CHECK_BUDGET,
        detail: format!(
            "generic-t limit vs root evaluation, 20 cases: max rel dev {worst:.1e} (tol {CROSS_CHECK_TOL:.0e}), {errors} errors, {elapsed:.2?} (budget {CROSS_CHECK_BUDGET:?})"
        ),
    }
}

fn main_fit(params: ChainParams, alpha_tol: f64) -> Outcome {
    let colors: Vec<usize> = (101..=1501).step_by(2).collect();
    let tol = FitTolerance {
        alpha: alpha_tol,
        beta: BETA_TOL,
    };
    match verify_main_fit(&params, &colors, tol, &PredictOptions::default()) {
        Ok(r) => {
            let fitted = r.fitted_exponents.clone().unwrap_or_default();
            Outcome {
                passed: r.passed,
                detail: format!(
                    "{params}, odd N in [101, 1501]: alpha = {:.6} (vol {:.6}, tol {alpha_tol:.0e}), beta = {:.4} (3 pi = {:.4}, tol {BETA_TOL})",
                    fitted.get("alpha").copied().unwrap_or(f64::NAN),
                    volume(&params),
                    fitted.get("beta").copied().unwrap_or(f64::NAN),
                    3.0 * PI
                ),
            }
        }
        Err(e) => Outcome {
            passed: false,
            detail: format!("{params}: {e}"),
        },
    }
}

fn belt_ratio() -> Outcome {
    let params = p(0, 2, 1, 0);
    match verify_lemma45(&params, &[101, 401, 1601], &PredictOptions::default()) {
        Ok(r) => {
            let neg = residual(&r, "ratio_deviation_negative[N=1601]");
            let pos = residual(&r, "ratio_deviation_positive[N=1601]");
            Outcome {
                passed: r.passed && residual(&r, "negative_sign_converges") == 1.0,
                detail: format!(
                    "{params}, N in {{101, 401, 1601}}: |J/pred - 1| at 1601 = {neg:.2e} (negative Re E) vs {pos:.2e} (positive), tol {RATIO_TOL}; {}",
                    r.notes
                ),
            }
        }
        Err(e) => Outcome {
            passed: false,
            detail: format!("{params}: {e}"),
        },
    }
}

fn quotient_convergence() -> Outcome {
    let mut passed = true;
    let mut parts = Vec::new();
    for params in [
        ChainParams::whitehead_link(),
        ChainParams::borromean_rings(),
    ] {
        match verify_lemma45(&params, &[251, 501, 1001, 2001], &PredictOptions::default()) {
            Ok(r) => {
                let q = residual(&r, "q_inf_re").hypot(residual(&r, "q_inf_im"));
                let dist = residual(&r, "distance[N=2001]");
                let arg = residual(&r, "arg_ratio[N=2001]");
                passed &= r.passed && dist < RATIO_TOL * q && arg.abs() < RATIO_TOL;
                parts.push(format!(
                    "{params}: |Q_N - Q_inf|/|Q_inf| = {:.2e}, arg = {arg:.2e}",
                    dist / q
                ));
            }
            Err(e) => {
                passed = false;
                parts.push(format!("{params}: {e}"));
            }
        }
    }
    Outcome {
        passed,
        detail: format!(
            "N in {{251, 501, 1001, 2001}}, decreasing, tol {RATIO_TOL}: {}",
            parts.join("; ")
        ),
    }
}

fn max_term_growth() -> Outcome {
    let start = Instant::now();
    let report = verify_lemma3(&[1000, 10_000, 100_000]);
    let elapsed = start.elapsed();
    match report {
        Ok(r) => {
            let last = residual(&r, "r_minus_1[N=100000]");
            Outcome {
                passed: r.passed && last.abs() < PREFIX_TOL && elapsed < PREFIX_BUDGET,
                detail: format!(
                    "r(N) - 1 = {:.2e}, {:.2e}, {last:.2e} at N = 1e3, 1e4, 1e5 (tol {PREFIX_TOL}), {elapsed:.2?} (budget {PREFIX_BUDGET:?})",
                    residual(&r, "r_minus_1[N=1000]"),
                    residual(&r, "r_minus_1[N=10000]")
                ),
            }
        }
        Err(e) => Outcome {
            passed: false,
            detail: e.to_string(),
        },
    }
}

fn central_far() -> Outcome {
    let params = ChainParams::whitehead_link();
    let window = default_delta(&params);
    match verify_lemma2(&[100, 200, 400, 800, 1600], &[1200], &params, window) {
        Ok(r) => {
            let fitted = r.central.fitted_exponents.clone().unwrap_or_default();
            let far = r.far.fitted_exponents.clone().unwrap_or_default();
            let slope = fitted.get("central_slope").copied().unwrap_or(f64::NAN);
            let target = 3.0 * window.delta - 2.0;
            Outcome {
                passed: r.central.passed && r.far.passed && (slope - target).abs() <= SLOPE_TOL,
                detail: format!(
                    "{params}, delta {}: central slope {slope:.3} vs {target:.3} (tol {SLOPE_TOL}); far C = {:.4}, eps = {:.4}, held-out N = 1200 margin {:.3}",
                    window.delta,
                    far.get("c").copied().unwrap_or(f64::NAN),
                    far.get("eps").copied().unwrap_or(f64::NAN),
                    residual(&r.far, "held_out_margin[N=1200]")
                ),
            }
        }
        Err(e) => Outcome {
            passed: false,
            detail: e.to_string(),
        },
    }
}

fn critical_point() -> Outcome {
    match verify_critical_point(ROOT_TOL) {
        Ok(r) => {
            let f_err = (residual(&r, "f_value") - 4.0 * lobachevsky(FRAC_PI_4)).abs();
            let h = [
                ("hessian_xx", -2.0),
                ("hessian_xy", -2.0),
                ("hessian_yy", -4.0),
            ];
            let h_err = h
                .iter()
                .map(|(l, v)| (residual(&r, l) - v).abs())
                .fold(0.0, f64::max);
            let root_err = residual(&r, "root_distance");
            Outcome {
                passed: r.passed && root_err < ROOT_TOL && f_err < ROOT_TOL && h_err < HESSIAN_TOL,
                detail: format!(
                    "{} root(s), distance to (pi/2, pi/4) {root_err:.1e}, f error {f_err:.1e} (tol {ROOT_TOL:.0e}), Hessian error {h_err:.1e} (tol {HESSIAN_TOL:.0e})",
                    residual(&r, "root_count")
                ),
            }
        }
        Err(e) => Outcome {
            passed: false,
            detail: e.to_string(),
        },
    }
}

fn odd_limsup() -> Outcome {
    let params = p(0, 2, 1, 0);
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let args = [
        "chainvol", "scan", "--a", "0", "--b", "2", "--c", "1", "--d", "0", "--Nmin", "2",
        "--Nmax", "1601",
    ];
    let code = chainvol_cli::run(args, &mut out, &mut err);
    if code != 0 {
        return Outcome {
            passed: false,
            detail: format!("scan exited {code}: {}", String::from_utf8_lossy(&err)),
        };
    }
    let text = String::from_utf8(out).expect("utf-8");
    let vol = volume(&params);
    let mut even_nonzero = 0;
    let mut gaps = Vec::new();
    for line in text.lines().skip(1) {
        let cells: Vec<&str> = line.split(',').collect();
        let n: usize = cells[0].parse().expect("N");
        if n % 2 == 0 {
            if cells[1] != "-inf" {
                even_nonzero += 1;
            }
        } else if [101, 201, 401, 801, 1601].contains(&n) {
            gaps.push((cells[3].parse::<f64>().expect("scaled") - vol).abs());
        }
    }
    let decreasing = gaps.windows(2).all(|w| w[1] < w[0]);
    let last = gaps.last().copied().unwrap_or(f64::NAN);
    Outcome {
        passed: even_nonzero == 0 && decreasing && last < ODD_SCAN_GAP,
        detail: format!(
            "{params}, N = 2..1601: {even_nonzero} nonzero even rows; |scaled - vol| at odd N = 101..1601: {} (decreasing, final tol {ODD_SCAN_GAP})",
            gaps.iter().map(|g| format!("{g:.4}")).collect::<Vec<_>>().join(", ")
        ),
    }
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("exact identities", exact_identities),
        ("oracle equivalence", oracle_equivalence),
        ("volume fit, Whitehead link", || {
            main_fit(ChainParams::whitehead_link(), WHITEHEAD_ALPHA_TOL)
        }),
        ("volume fit, Borromean rings", || {
            main_fit(ChainParams::borromean_rings(), BORROMEAN_ALPHA_TOL)
        }),
        ("b >= 2 complex asymptotic", belt_ratio),
        ("Q_N -> Q_inf", quotient_convergence),
        ("maximal term growth", max_term_growth),
        ("central/far estimate", central_far),
        ("critical point", critical_point),
        ("odd-N limsup", odd_limsup),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let verdict = if outcome.passed { "PASS" } else { "FAIL" };
        if !outcome.passed {
            failed += 1;
        }
        println!(
            "criterion {:>2} {verdict} {name}: {} [{:.2?}]",
            i + 1,
            outcome.detail,
            start.elapsed()
        );
    }
    println!(
        "acceptance: {} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
