use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::invariant::ChainParams;
use crate::special::{erfc, integrate_halfline, GaussianEnvelope, QuadratureSpec};

/// Which Gaussian integral defines the limit `Q_inf` for `b = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GaussianForm {
    /// Quadratic form `-(x^2 + 2xy + 2y^2)` in signed offsets, summed over the
    /// full range of every `k`. Phase coefficient `4a - c + d`.
    #[default]
    Signed,
    /// Offsets folded to `|x|, |y|`, which reduces to an `erfc` integral with
    /// phase coefficient `4a + c - d`.
    Folded,
}

/// `psi = exp((4a + 3c - 3d) pi i / 4)`.
pub fn psi(params: &ChainParams) -> Complex64 {
    let m = (4 * params.a() + 3 * params.c() - 3 * params.d()).rem_euclid(8);
    Complex64::from_polar(1.0, m as f64 * PI / 4.0)
}

fn check_supported(params: &ChainParams) -> Result<()> {
    if params.b() != 1 {
        return Err(Error::Unsupported(format!(
            "{params}: the Gaussian limit is defined for b = 1 only"
        )));
    }
    if params.clasps() == 0 {
        return Err(Error::Unsupported(format!(
            "{params}: with c + d = 0 the sum is a quadratic Gauss sum and the Gaussian integrand does not decay"
        )));
    }
    Ok(())
}

/// `Q_inf = psi 2^{1-(c+d)/2} int_0^inf exp(-pi (c+d - i m) w^2 / 2) F(w) dw` where
/// `m = 4a - c + d`, `F = 1` for [`GaussianForm::Signed`], and `m = 4a + c - d`,
/// `F = erfc(sqrt(pi/2) w)^{c+d}` for [`GaussianForm::Folded`].
pub fn q_infinity(
    params: &ChainParams,
    spec: &QuadratureSpec,
    form: GaussianForm,
) -> Result<Complex64> {
    check_supported(params)?;
    let cd = params.clasps();
    let cdf = cd as f64;
    let m = match form {
        GaussianForm::Signed => params.twist_exponent(),
        GaussianForm::Folded => 4 * params.a() + params.c() - params.d(),
    } as f64;
    let coeff = Complex64::new(-PI * cdf / 2.0, PI * m / 2.0);
    let envelope = GaussianEnvelope::new(1.0, PI * cdf / 2.0)?;
    let integral = match form {
        GaussianForm::Signed => integrate_halfline(|w| (coeff * w * w).exp(), &envelope, spec)?,
        GaussianForm::Folded => {
            let scale = FRAC_PI_2.sqrt();
            integrate_halfline(
                |w| (coeff * w * w).exp() * erfc(scale * w).powi(cd as i32),
                &envelope,
                spec,
            )?
        }
    };
    Ok(psi(params) * 2f64.powf(1.0 - cdf / 2.0) * integral)
}

/// Closed form of the signed limit, `psi 2^{-(c+d)/2} sqrt(2 / (c+d - i (4a - c + d)))`.
pub fn q_infinity_signed_closed_form(params: &ChainParams) -> Result<Complex64> {
    check_supported(params)?;
    let cd = params.clasps() as f64;
    let z = Complex64::new(cd, -(params.twist_exponent() as f64));
    Ok(psi(params) * 2f64.powf(-cd / 2.0) * (Complex64::new(2.0, 0.0) / z).sqrt())
}
