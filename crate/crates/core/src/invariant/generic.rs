use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use super::{jones_at_root, ChainParams};
use crate::arith::Precision;
use crate::error::{Error, Result};

/// A point `t = e^h`. Fractional powers are taken as `t^x = e^{x h}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvaluationPoint {
    h: Complex64,
}

impl EvaluationPoint {
    pub fn new(h: Complex64) -> Result<Self> {
        if h == Complex64::new(0.0, 0.0) || !h.is_finite() {
            return Err(Error::InvalidParams(format!(
                "evaluation point needs finite nonzero h (got {h})"
            )));
        }
        Ok(Self { h })
    }

    /// `h = 2 pi i (1 + eps) / N`.
    pub fn near_root(color: usize, eps: f64) -> Result<Self> {
        Self::new(Complex64::new(0.0, 2.0 * PI * (1.0 + eps) / color as f64))
    }

    pub fn h(&self) -> Complex64 {
        self.h
    }

    /// `t^x`.
    pub fn pow(&self, x: f64) -> Complex64 {
        (self.h * x).exp()
    }

    /// The point `t^{-1}`.
    pub fn inverse(&self) -> Self {
        Self { h: -self.h }
    }
}

/// `t^{m/2} - t^{-m/2}` together with a rounding floor below which it counts as zero.
fn half_difference(m: f64, pt: &EvaluationPoint) -> (Complex64, f64) {
    let up = pt.pow(m / 2.0);
    let down = pt.pow(-m / 2.0);
    let floor = 16.0 * f64::EPSILON * (1.0 + (pt.h * m).norm()) * (up.norm() + down.norm());
    (up - down, floor)
}

/// `1 - t^m`, failing when it vanishes at `pt`.
fn one_minus(m: f64, pt: &EvaluationPoint) -> Complex64 {
    Complex64::new(1.0, 0.0) - pt.pow(m)
}

fn checked_one_minus(m: i64, pt: &EvaluationPoint) -> Result<Complex64> {
    let v = one_minus(m as f64, pt);
    let tm = pt.pow(m as f64);
    if v.norm() <= 16.0 * f64::EPSILON * (1.0 + (pt.h * m as f64).norm()) * (1.0 + tm.norm()) {
        return Err(Error::VanishingDenominator {
            factor: format!("(1 - t^{m})"),
        });
    }
    Ok(v)
}

fn quantum_integer_checked(m: i64, pt: &EvaluationPoint, label: &str) -> Result<Complex64> {
    let (den, den_floor) = half_difference(1.0, pt);
    if den.norm() <= den_floor {
        return Err(Error::VanishingDenominator {
            factor: "(t^{1/2} - t^{-1/2})".into(),
        });
    }
    let (num, num_floor) = half_difference(m as f64, pt);
    if !label.is_empty() && num.norm() <= num_floor {
        return Err(Error::VanishingDenominator {
            factor: label.to_string(),
        });
    }
    Ok(num / den)
}

/// Quantum integer `[m] = (t^{m/2} - t^{-m/2}) / (t^{1/2} - t^{-1/2})`.
pub fn quantum_integer(m: i64, pt: &EvaluationPoint) -> Result<Complex64> {
    quantum_integer_checked(m, pt, "")
}

/// Scalars of the four tangles in the `V_{2n+1}` block.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TangleValues {
    /// Twist `T = t^{n(n+1)}`.
    pub twist: Complex64,
    /// Belt `B = [N(2n+1)] / [2n+1]`.
    pub belt: Complex64,
    /// Clasp `C`.
    pub clasp: Complex64,
    /// Mirror clasp, `C` evaluated at `t^{-1}`.
    pub clasp_mirror: Complex64,
}

fn clasp_value(n: usize, color: usize, pt: &EvaluationPoint, framing: bool) -> Result<Complex64> {
    let nn = color as i64;
    let ni = n as i64;
    let denominators = (1..=ni)
        .map(|j| checked_one_minus(j, pt))
        .collect::<Result<Vec<_>>>()?;
    let mut total = Complex64::new(0.0, 0.0);
    for k in 0..(nn - ni) {
        let mut term = pt.pow((-nn * (ni + k)) as f64);
        for (j, den) in (1..=ni).zip(&denominators) {
            term *= one_minus((nn - j - k) as f64, pt) * one_minus((j + k) as f64, pt) / den;
        }
        total += term;
    }
    let mut exponent = (nn * (nn - 1)) as f64 / 2.0;
    if framing {
        exponent += (nn * nn - 1) as f64 / 2.0;
    }
    Ok(pt.pow(exponent) * total)
}

/// Tangle scalars at a generic point. With `framing` set the clasps carry
/// the extra factor `t^{(N^2-1)/2}`.
pub fn tangle_values(
    n: usize,
    color: usize,
    pt: &EvaluationPoint,
    framing: bool,
) -> Result<TangleValues> {
    if n >= color {
        return Err(Error::IndexOutOfRange { n, k: 0, color });
    }
    let ni = n as i64;
    let odd = 2 * ni + 1;
    let twist = pt.pow((ni * (ni + 1)) as f64);
    let belt = quantum_integer(color as i64 * odd, pt)?
        / quantum_integer_checked(odd, pt, &format!("[{odd}]"))?;
    let clasp = clasp_value(n, color, pt, framing)?;
    let clasp_mirror = clasp_value(n, color, &pt.inverse(), framing)?;
    Ok(TangleValues {
        twist,
        belt,
        clasp,
        clasp_mirror,
    })
}

/// `J_N(W_{a,b,c,d})` at a generic point:
/// `sum_n [2n+1]/[N] T^a B^b C^c C_mirror^d`, with framing iff `c + d = 1`.
pub fn jones_generic(
    params: &ChainParams,
    color: usize,
    pt: &EvaluationPoint,
) -> Result<Complex64> {
    if color == 0 {
        return Err(Error::InvalidParams("color N must be at least 1".into()));
    }
    let (num, floor) = half_difference(color as f64, pt);
    if num.norm() <= floor {
        return Err(Error::ResonantPoint {
            h: format!("{}", pt.h),
        });
    }
    let qn = quantum_integer(color as i64, pt)?;
    let framing = params.clasps() == 1;
    let mut total = Complex64::new(0.0, 0.0);
    for n in 0..color {
        let tv = tangle_values(n, color, pt, framing)?;
        let ni = n as i64;
        let weight = quantum_integer(2 * ni + 1, pt)? / qn;
        let twist = pt.pow((params.a() * ni * (ni + 1)) as f64);
        total += weight
            * twist
            * tv.belt.powi(params.b() as i32)
            * tv.clasp.powi(params.c() as i32)
            * tv.clasp_mirror.powi(params.d() as i32);
    }
    Ok(total)
}

/// Outcome of extrapolating the generic formula onto the root of unity.
#[derive(Debug, Clone, Serialize)]
pub struct CrossCheckReport {
    pub eps: Vec<f64>,
    /// `jones_generic` at `h = 2 pi i (1 + eps) / N`, as `(re, im)`.
    pub samples: Vec<(f64, f64)>,
    /// Extrapolation to `eps = 0` using the first `i + 1` samples.
    pub extrapolated: Vec<(f64, f64)>,
    /// Value of `jones_at_root`.
    pub exact: (f64, f64),
    /// `|extrapolated_i - exact| / max(|exact|, 1)` per level.
    pub deviations: Vec<f64>,
    /// Deviation of the final level.
    pub relative_deviation: f64,
    /// False when the deviation grew from one level to the next.
    pub converging: bool,
}

/// Default `eps` ladder for [`limit_cross_check`].
pub const DEFAULT_CROSS_CHECK_EPS: [f64; 4] = [1e-2, 1e-3, 1e-4, 1e-5];

/// Largest color accepted by [`limit_cross_check`].
pub const CROSS_CHECK_MAX_COLOR: usize = 25;

/// Evaluate the generic formula near `t = exp(2 pi i / N)`, extrapolate to the
/// root with Neville's scheme in `eps`, and compare with the exact value.
pub fn limit_cross_check(
    params: &ChainParams,
    color: usize,
    eps: &[f64],
) -> Result<CrossCheckReport> {
    if color == 0 || color > CROSS_CHECK_MAX_COLOR {
        return Err(Error::InvalidParams(format!(
            "cross-check needs 1 <= N <= {CROSS_CHECK_MAX_COLOR} (got {color})"
        )));
    }
    if eps.is_empty() || eps.iter().any(|e| !(*e > 0.0)) || eps.windows(2).any(|w| w[1] >= w[0]) {
        return Err(Error::InvalidParams(
            "eps sequence must be positive and strictly decreasing".into(),
        ));
    }
    let samples = eps
        .iter()
        .map(|&e| jones_generic(params, color, &EvaluationPoint::near_root(color, e)?))
        .collect::<Result<Vec<_>>>()?;
    let exact = jones_at_root(params, color, Precision::default())?;
    let (re, im) = exact.to_cartesian()?;
    let exact = Complex64::new(re, im);
    let scale = exact.norm().max(1.0);

    // Neville tableau: after pass `level`, table[i] interpolates samples i..=i+level at eps = 0
    let mut table = samples.clone();
    let mut extrapolated = vec![samples[0]];
    for level in 1..eps.len() {
        for i in 0..eps.len() - level {
            let (xi, xj) = (eps[i], eps[i + level]);
            table[i] = (table[i + 1] * xi - table[i] * xj) / (xi - xj);
        }
        extrapolated.push(table[0]);
    }
    let deviations: Vec<f64> = extrapolated
        .iter()
        .map(|v| (v - exact).norm() / scale)
        .collect();
    let converging = deviations.windows(2).all(|w| w[1] <= w[0]);
    let pair = |z: &Complex64| (z.re, z.im);
    Ok(CrossCheckReport {
        eps: eps.to_vec(),
        samples: samples.iter().map(pair).collect(),
        extrapolated: extrapolated.iter().map(pair).collect(),
        exact: pair(&exact),
        relative_deviation: *deviations.last().expect("non-empty"),
        deviations,
        converging,
    })
}
