use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use super::{LemmaId, LemmaReport};
use crate::error::{Error, Result};
use crate::special::lobachevsky;

const GRID: usize = 50;
const INSET: f64 = 1e-3;
const NEWTON_STEPS: usize = 200;

/// `f(x, y) = -2 Lambda(x + y) + 2 Lambda(y) + Lambda(x)` on the open triangle
/// `x, y > 0`, `x + y < pi`.
pub fn f_surface(x: f64, y: f64) -> Result<f64> {
    if !(x > 0.0 && y > 0.0 && x + y < PI) {
        return Err(Error::Domain(format!(
            "f(x, y) needs x, y > 0 and x + y < pi, got ({x}, {y})"
        )));
    }
    Ok(unchecked(x, y))
}

fn unchecked(x: f64, y: f64) -> f64 {
    -2.0 * lobachevsky(x + y) + 2.0 * lobachevsky(y) + lobachevsky(x)
}

// the triangle shrunk by INSET, away from the log singularities of the gradient
fn inside(x: f64, y: f64) -> bool {
    x >= INSET && y >= INSET && x + y <= PI - INSET
}

// Lambda'(t) = -log|2 sin t|
fn gradient(x: f64, y: f64) -> [f64; 2] {
    let ls = |t: f64| (2.0 * t.sin()).abs().ln();
    let s = ls(x + y);
    [2.0 * s - ls(x), 2.0 * s - 2.0 * ls(y)]
}

fn hessian(x: f64, y: f64) -> [[f64; 2]; 2] {
    let cot = |t: f64| t.cos() / t.sin();
    let c = 2.0 * cot(x + y);
    [[c - cot(x), c], [c, c - 2.0 * cot(y)]]
}

/// Damped Newton on `grad f = 0`, halving the step until it stays in the
/// inset triangle and reduces `|grad f|`. Starts that run into the corners,
/// where `grad f` has degenerate limits, give `None`.
fn newton(mut x: f64, mut y: f64, tol: f64) -> Option<(f64, f64)> {
    let norm = |g: [f64; 2]| g[0].hypot(g[1]);
    let mut g = gradient(x, y);
    for _ in 0..NEWTON_STEPS {
        if norm(g) < tol * 1e-3 {
            return Some((x, y));
        }
        let h = hessian(x, y);
        let det = h[0][0] * h[1][1] - h[0][1] * h[1][0];
        if det.abs() < 1e-300 {
            return None;
        }
        let dx = -(h[1][1] * g[0] - h[0][1] * g[1]) / det;
        let dy = -(h[0][0] * g[1] - h[1][0] * g[0]) / det;
        let mut step = 1.0;
        loop {
            let (nx, ny) = (x + step * dx, y + step * dy);
            if inside(nx, ny) {
                let ng = gradient(nx, ny);
                if norm(ng) < norm(g) {
                    (x, y, g) = (nx, ny, ng);
                    break;
                }
            }
            step *= 0.5;
            if step < 1e-12 {
                return None;
            }
        }
    }
    (norm(g) < tol * 1e-3).then_some((x, y))
}

// Central second differences at steps h and h/2, combined by Richardson.
fn fd_hessian(x: f64, y: f64) -> [[f64; 2]; 2] {
    let second = |h: f64| {
        let f = unchecked;
        let xx = (f(x + h, y) - 2.0 * f(x, y) + f(x - h, y)) / (h * h);
        let yy = (f(x, y + h) - 2.0 * f(x, y) + f(x, y - h)) / (h * h);
        let xy =
            (f(x + h, y + h) - f(x + h, y - h) - f(x - h, y + h) + f(x - h, y - h)) / (4.0 * h * h);
        [xx, xy, yy]
    };
    let (coarse, fine) = (second(2e-3), second(1e-3));
    let r = |i: usize| (4.0 * fine[i] - coarse[i]) / 3.0;
    [[r(0), r(1)], [r(1), r(2)]]
}

/// Multi-start search for critical points of `f` over a 50x50 grid of starts
/// on the triangle inset by `1e-3`.
///
/// Passes iff exactly one root is found, it is within `tol` of `(pi/2, pi/4)`,
/// `f` there is within `tol` of `4 Lambda(pi/4)` and the finite-difference
/// Hessian is within `10 tol` of `[[-2, -2], [-2, -4]]` entrywise.
pub fn verify_critical_point(tol: f64) -> Result<LemmaReport> {
    if !(tol > 0.0) {
        return Err(Error::InvalidParams(format!(
            "tol must be positive, got {tol}"
        )));
    }
    let span = PI - 3.0 * INSET;
    let mut roots: Vec<(f64, f64)> = Vec::new();
    let (mut starts, mut stalled) = (0usize, 0usize);
    for i in 0..GRID {
        for j in 0..GRID - i {
            let x = INSET + span * (i as f64 + 0.5) / GRID as f64;
            let y = INSET + span * (j as f64 + 0.5) / GRID as f64;
            if !inside(x, y) {
                continue;
            }
            starts += 1;
            match newton(x, y, tol) {
                Some((rx, ry)) => {
                    if !roots.iter().any(|&(a, b)| (a - rx).hypot(b - ry) < 1e-6) {
                        roots.push((rx, ry));
                    }
                }
                None => stalled += 1,
            }
        }
    }
    roots.sort_by(|a, b| a.partial_cmp(b).expect("finite roots"));

    let mut report = LemmaReport::new(LemmaId::FCritical);
    report.push("root_count", roots.len() as f64);
    report.push("stalled_starts", stalled as f64);
    let [(x, y)] = roots[..] else {
        report.note(format!(
            "expected exactly one critical point, found {}: {roots:?}",
            roots.len()
        ));
        return Ok(report);
    };
    let value = unchecked(x, y);
    let target = 4.0 * lobachevsky(FRAC_PI_4);
    let h = fd_hessian(x, y);
    let expected = [[-2.0, -2.0], [-2.0, -4.0]];
    let hess_err = (0..2)
        .flat_map(|i| (0..2).map(move |j| (i, j)))
        .map(|(i, j)| (h[i][j] - expected[i][j]).abs())
        .fold(0.0, f64::max);
    let root_err = (x - FRAC_PI_2).hypot(y - FRAC_PI_4);
    let s = (x + y).sin();
    let eq1 = 2.0 * s * s - x.sin();
    let eq2 = s - y.sin();

    report.push("root_x", x);
    report.push("root_y", y);
    report.push("root_distance", root_err);
    report.push("f_value", value);
    report.push("f_value_error", (value - target).abs());
    report.push("hessian_xx", h[0][0]);
    report.push("hessian_xy", h[0][1]);
    report.push("hessian_yy", h[1][1]);
    report.push("hessian_max_error", hess_err);
    report.push("equation_residual", eq1.abs().max(eq2.abs()));
    report.passed = root_err < tol && (value - target).abs() < tol && hess_err < 10.0 * tol;
    report.note(format!("{starts} starts, {stalled} stalled at the inset boundary, Hessian by Richardson-combined central differences"));
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn surface_values() {
        let v = f_surface(FRAC_PI_2, FRAC_PI_4).unwrap();
        assert!((v - 1.831_931_188_354_438).abs() < 1e-14);
        let third = PI / 3.0;
        assert!((f_surface(third, third).unwrap() - 5.0 * lobachevsky(third)).abs() < 1e-14);
        assert!(f_surface(PI / 2.0, PI / 2.0 - 1e-12).unwrap().is_finite());
        assert!(matches!(f_surface(0.0, 1.0), Err(Error::Domain(_))));
        assert!(matches!(f_surface(2.0, 1.2), Err(Error::Domain(_))));
    }

    #[test]
    fn gradient_matches_differences() {
        for (x, y) in [(0.7, 0.4), (1.2, 1.1), (2.0, 0.3)] {
            let g = gradient(x, y);
            let h = 1e-6;
            let gx = (unchecked(x + h, y) - unchecked(x - h, y)) / (2.0 * h);
            let gy = (unchecked(x, y + h) - unchecked(x, y - h)) / (2.0 * h);
            assert!((g[0] - gx).abs() < 1e-7 && (g[1] - gy).abs() < 1e-7);
        }
    }

    #[test]
    fn unique_root_at_expected_point() {
        let report = verify_critical_point(1e-8).unwrap();
        assert!(report.passed, "{report:?}");
        assert_eq!(report.residual("root_count"), Some(1.0));
        assert!(report.residual("equation_residual").unwrap() < 1e-8);
        let h = |l| report.residual(l).unwrap();
        assert!(
            (h("hessian_xx") + 2.0).abs() < 1e-4
                && (h("hessian_xy") + 2.0).abs() < 1e-4
                && (h("hessian_yy") + 4.0).abs() < 1e-4
        );
    }

    #[test]
    fn deterministic() {
        assert_eq!(
            verify_critical_point(1e-8).unwrap(),
            verify_critical_point(1e-8).unwrap()
        );
        assert!(verify_critical_point(0.0).is_err());
    }
}
