use std::f64::consts::{FRAC_PI_4, LN_2, PI};

use num_complex::Complex64;
use serde::Serialize;

use crate::invariant::ChainParams;
use crate::special::lobachevsky;

/// `Vol = 8 (c + d) Lambda(pi/4)`.
pub fn volume(params: &ChainParams) -> f64 {
    8.0 * params.clasps() as f64 * lobachevsky(FRAC_PI_4)
}

/// Numerator `m` of `CS = m / 8 * 2 pi^2`: `-4a + c - d` when `c + d = 1`,
/// otherwise `-4a - 7c + 7d`.
pub fn chern_simons_numerator(params: &ChainParams) -> i64 {
    if params.clasps() == 1 {
        -4 * params.a() + params.c() - params.d()
    } else {
        -4 * params.a() - 7 * params.c() + 7 * params.d()
    }
}

/// Chern-Simons constant of the expansion, in the units of `exp(i CS N / 2 pi)`.
pub fn chern_simons(params: &ChainParams) -> f64 {
    chern_simons_numerator(params) as f64 / 8.0 * 2.0 * PI * PI
}

/// Sign of the real part of the constant term for `b >= 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ESign {
    /// `-2 pi (c+d) log 2`, the value that matches the `b >= 2` leading-term formula.
    #[default]
    Negative,
    /// `+2 pi (c+d) log 2`, as printed with the main expansion.
    Positive,
}

impl ESign {
    pub fn factor(self) -> f64 {
        match self {
            ESign::Negative => -1.0,
            ESign::Positive => 1.0,
        }
    }

    pub fn other(self) -> Self {
        match self {
            ESign::Negative => ESign::Positive,
            ESign::Positive => ESign::Negative,
        }
    }
}

/// Constant term `E` of the expansion.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum ETerm {
    /// `b = 1`: `E` is `2 pi log Q_inf`, with `Q_inf` given by a Gaussian integral.
    IntegralDefined,
    Value(Complex64),
}

/// `(D, E)`: `D = 3 pi` and an integral-defined `E` for `b = 1`; for `b >= 2`
/// `D = 2 pi b` and `E = s 2 pi (c+d) log 2 + i (4a + 3c - 3d) / 4 * 2 pi^2`.
pub fn growth_coefficients(params: &ChainParams, sign: ESign) -> (f64, ETerm) {
    if params.b() == 1 {
        return (3.0 * PI, ETerm::IntegralDefined);
    }
    let cd = params.clasps() as f64;
    // + 0.0 turns -0 into 0 when there are no clasps
    let re = sign.factor() * 2.0 * PI * cd * LN_2 + 0.0;
    let im = (4 * params.a() + 3 * params.c() - 3 * params.d()) as f64 / 4.0 * 2.0 * PI * PI;
    (
        2.0 * PI * params.b() as f64,
        ETerm::Value(Complex64::new(re, im)),
    )
}
