use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tolerances for adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureSpec {
    pub abs_tol: f64,
    pub rel_tol: f64,
    /// Maximum number of interval bisections.
    pub max_refinements: usize,
}

impl QuadratureSpec {
    pub fn new(abs_tol: f64, rel_tol: f64, max_refinements: usize) -> Result<Self> {
        if !(abs_tol > 0.0 && rel_tol > 0.0) || !abs_tol.is_finite() || !rel_tol.is_finite() {
            return Err(Error::InvalidParams(format!(
                "quadrature tolerances must be positive and finite (abs {abs_tol}, rel {rel_tol})"
            )));
        }
        if max_refinements == 0 {
            return Err(Error::InvalidParams(
                "max_refinements must be at least 1".into(),
            ));
        }
        Ok(Self {
            abs_tol,
            rel_tol,
            max_refinements,
        })
    }

    /// Same tolerances with `abs_tol = rel_tol = tol`.
    pub fn with_tol(tol: f64) -> Result<Self> {
        Self::new(tol, tol, Self::default().max_refinements)
    }
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            abs_tol: 1e-12,
            rel_tol: 1e-12,
            max_refinements: 2000,
        }
    }
}

/// Bound `|f(w)| <= amplitude * exp(-rate * w^2)` on `[0, inf)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianEnvelope {
    pub amplitude: f64,
    pub rate: f64,
}

impl GaussianEnvelope {
    pub fn new(amplitude: f64, rate: f64) -> Result<Self> {
        if !(amplitude > 0.0 && rate > 0.0) || !amplitude.is_finite() || !rate.is_finite() {
            return Err(Error::InvalidParams(format!(
                "Gaussian envelope needs positive amplitude and rate (got {amplitude}, {rate})"
            )));
        }
        Ok(Self { amplitude, rate })
    }

    /// Truncation point `sqrt(max(1, -log(abs_tol / A)) / rate) + 1`.
    pub fn cutoff(&self, abs_tol: f64) -> f64 {
        ((-(abs_tol / self.amplitude).ln()).max(1.0) / self.rate).sqrt() + 1.0
    }

    /// Upper bound on `int_w^inf A exp(-rate t^2) dt` for `w > 0`.
    pub fn tail_bound(&self, w: f64) -> f64 {
        self.amplitude * (-self.rate * w * w).exp() / (2.0 * self.rate * w)
    }
}

// Gauss-Kronrod 7/15 abscissae and weights on [-1, 1].
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
// Gauss weights for XGK[1], XGK[3], XGK[5], XGK[7]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

#[derive(Debug, Clone, Copy)]
struct Segment {
    a: f64,
    b: f64,
    value: Complex64,
    error: f64,
}

fn gauss_kronrod<F: Fn(f64) -> Complex64>(f: &F, a: f64, b: f64) -> Segment {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let center = f(c);
    let mut kronrod = center * WGK[7];
    let mut gauss = center * WG[3];
    for i in 0..7 {
        let dx = h * XGK[i];
        let pair = f(c - dx) + f(c + dx);
        kronrod += pair * WGK[i];
        if i % 2 == 1 {
            gauss += pair * WG[i / 2];
        }
    }
    Segment {
        a,
        b,
        value: kronrod * h,
        error: ((kronrod - gauss) * h).norm(),
    }
}

/// Adaptive Gauss-Kronrod integration of `f` over `[a, b]`.
///
/// `extra_error` is added to the error budget (used for truncated tails).
fn adaptive<F: Fn(f64) -> Complex64>(
    f: &F,
    a: f64,
    b: f64,
    initial_pieces: usize,
    extra_error: f64,
    spec: &QuadratureSpec,
) -> Result<Complex64> {
    let width = (b - a) / initial_pieces as f64;
    let mut segments: Vec<Segment> = (0..initial_pieces)
        .map(|i| {
            let lo = a + width * i as f64;
            let hi = if i + 1 == initial_pieces {
                b
            } else {
                lo + width
            };
            gauss_kronrod(f, lo, hi)
        })
        .collect();
    let mut refinements = 0;
    loop {
        let value: Complex64 = segments.iter().map(|s| s.value).sum();
        let error = segments.iter().map(|s| s.error).sum::<f64>() + extra_error;
        if error <= spec.abs_tol.max(spec.rel_tol * value.norm()) {
            return Ok(value);
        }
        if refinements >= spec.max_refinements {
            return Err(Error::Convergence {
                estimate: format!("{value}"),
                error_bound: error,
            });
        }
        let (worst, _) = segments
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.error.total_cmp(&y.1.error))
            .expect("at least one segment");
        let s = segments.swap_remove(worst);
        let mid = 0.5 * (s.a + s.b);
        segments.push(gauss_kronrod(f, s.a, mid));
        segments.push(gauss_kronrod(f, mid, s.b));
        refinements += 1;
    }
}

/// `int_a^b f` to the tolerances in `spec`.
pub fn integrate<F: Fn(f64) -> Complex64>(
    f: F,
    a: f64,
    b: f64,
    spec: &QuadratureSpec,
) -> Result<Complex64> {
    adaptive(&f, a, b, 1, 0.0, spec)
}

/// `int_0^inf f` for an integrand dominated by a Gaussian envelope.
///
/// The range is cut at [`GaussianEnvelope::cutoff`]; the analytic tail bound
/// beyond it counts against the error budget.
pub fn integrate_halfline<F: Fn(f64) -> Complex64>(
    f: F,
    envelope: &GaussianEnvelope,
    spec: &QuadratureSpec,
) -> Result<Complex64> {
    let w = envelope.cutoff(spec.abs_tol);
    let pieces = (w.ceil() as usize).clamp(1, 64) * 2;
    adaptive(&f, 0.0, w, pieces, envelope.tail_bound(w), spec)
}
