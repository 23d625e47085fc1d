use std::f64::consts::{PI, TAU};

const MAX_TERMS: usize = 200;

/// `zeta(2k)` for `k >= 1`.
fn zeta_even(k: usize) -> f64 {
    match k {
        1 => PI * PI / 6.0,
        2 => PI.powi(4) / 90.0,
        3 => PI.powi(6) / 945.0,
        _ => {
            // direct sum plus a midpoint tail; the tail error is below 64^-(2k+1)
            let s = 2 * k as i32;
            let m = 64;
            let head: f64 = (1..=m).rev().map(|j| (j as f64).powi(-s)).sum();
            head + (m as f64 + 0.5).powi(1 - s) / f64::from(s - 1)
        }
    }
}

/// Clausen function `Cl_2(phi) = -int_0^phi log|2 sin(t/2)| dt` for `phi` in `[0, pi]`.
///
/// Series `phi - phi log(phi) + sum_k 2 zeta(2k) phi (phi / 2pi)^(2k) / (2k (2k+1))`.
/// The term ratio is bounded by `r = (phi / 2pi)^2 <= 1/4`, so once a term
/// falls below `eps * (1 - r)` the remaining tail is smaller than `eps`.
fn clausen2_reduced(phi: f64) -> f64 {
    if phi == 0.0 {
        return 0.0;
    }
    let r = (phi / TAU).powi(2);
    let mut acc = phi - phi * phi.ln();
    let mut pow = phi;
    for k in 1..MAX_TERMS {
        pow *= r;
        let twok = 2.0 * k as f64;
        let term = 2.0 * zeta_even(k) * pow / (twok * (twok + 1.0));
        acc += term;
        if term <= 1e-17 * (1.0 - r) {
            break;
        }
    }
    acc
}

/// Lobachevsky function `Lambda(theta) = -int_0^theta log|2 sin x| dx`.
///
/// Evaluated as `Cl_2(2 theta) / 2` after reducing `theta` into `[-pi/2, pi/2]`
/// by pi-periodicity and oddness. Absolute error is a few ulps of `Lambda(pi/6)`.
pub fn lobachevsky(theta: f64) -> f64 {
    assert!(theta.is_finite(), "lobachevsky: non-finite argument");
    let reduced = theta - PI * (theta / PI).round();
    let sign = if reduced < 0.0 { -1.0 } else { 1.0 };
    sign * 0.5 * clausen2_reduced(2.0 * reduced.abs())
}
