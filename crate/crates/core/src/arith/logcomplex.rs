use std::f64::consts::TAU;
use std::fmt;

use super::{CompensatedSum, MpFloat, Precision, Real};
use crate::error::{Error, Result};

/// Complex number stored as (natural log of magnitude, phase).
///
/// The phase is kept in `(-pi, pi]`. A log-magnitude of negative infinity
/// encodes exact zero; all zeros compare equal whatever their phase.
#[derive(Clone, Debug)]
pub struct LogComplex<R: Real = f64> {
    log_mag: R,
    phase: R,
}

/// Reduce an angle to `(-pi, pi]`.
pub fn normalize_phase<R: Real>(p: R) -> R {
    if !p.is_finite() {
        return p;
    }
    let pi = R::pi(p.precision());
    let two_pi = pi.clone() + pi.clone();
    let k = (p.to_f64() / TAU).round();
    let mut r = if k != 0.0 {
        p.clone() - two_pi.clone() * p.from_f64_like(k)
    } else {
        p
    };
    if r > pi {
        r = r - two_pi;
    } else if r <= -pi {
        r = r + two_pi;
    }
    r
}

/// Signed difference `a - b` of two angles, reduced to `(-pi, pi]`.
pub fn angle_diff(a: f64, b: f64) -> f64 {
    normalize_phase(a - b)
}

impl<R: Real> LogComplex<R> {
    pub fn new(log_mag: R, phase: R) -> Self {
        if log_mag.is_neg_infinity() {
            let zero = log_mag.zero_like();
            return Self {
                log_mag,
                phase: zero,
            };
        }
        Self {
            log_mag,
            phase: normalize_phase(phase),
        }
    }

    pub fn zero(prec: Precision) -> Self {
        Self {
            log_mag: R::neg_infinity(prec),
            phase: R::from_i64(0, prec),
        }
    }

    pub fn one(prec: Precision) -> Self {
        Self {
            log_mag: R::from_i64(0, prec),
            phase: R::from_i64(0, prec),
        }
    }

    /// The positive real `exp(log_mag)`.
    pub fn from_log_mag(log_mag: R) -> Self {
        let phase = log_mag.zero_like();
        Self::new(log_mag, phase)
    }

    /// `exp(i pi num / den)`, with the fraction reduced exactly before rounding.
    pub fn unit_pi_fraction(num: i128, den: i128, prec: Precision) -> Self {
        assert!(den > 0, "denominator must be positive");
        let mut m = num.rem_euclid(2 * den);
        if m > den {
            m -= 2 * den;
        }
        let phase = if m == 0 {
            R::from_i64(0, prec)
        } else {
            // m and den may exceed i64 only for absurd colors; keep the ratio in f64 then.
            match (i64::try_from(m), i64::try_from(den)) {
                (Ok(m), Ok(d)) => R::pi(prec) * R::from_i64(m, prec) / R::from_i64(d, prec),
                _ => R::from_f64(std::f64::consts::PI * (m as f64 / den as f64), prec),
            }
        };
        Self {
            log_mag: R::from_i64(0, prec),
            phase,
        }
    }

    pub fn from_cartesian(re: R, im: R) -> Self {
        let r = re.hypot(&im);
        if r.is_zero() {
            return Self::zero(re.precision());
        }
        Self::new(r.ln(), im.atan2(&re))
    }

    pub fn log_mag(&self) -> &R {
        &self.log_mag
    }

    pub fn phase(&self) -> &R {
        &self.phase
    }

    pub fn is_zero(&self) -> bool {
        self.log_mag.is_neg_infinity()
    }

    /// Product: log-magnitudes add, phases add and are re-normalized.
    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        if other.is_zero() {
            return other.clone();
        }
        Self::new(
            self.log_mag.clone() + other.log_mag.clone(),
            self.phase.clone() + other.phase.clone(),
        )
    }

    /// Integer power; `e` may be negative for nonzero values.
    pub fn powi(&self, e: i64) -> Result<Self> {
        if e == 0 {
            return Ok(Self::one(self.log_mag.precision()));
        }
        if self.is_zero() {
            return if e < 0 {
                Err(Error::ZeroToNegativePower(e))
            } else {
                Ok(self.clone())
            };
        }
        let k = self.log_mag.from_i64_like(e);
        Ok(Self::new(
            self.log_mag.clone() * k.clone(),
            self.phase.clone() * k,
        ))
    }

    pub fn recip(&self) -> Result<Self> {
        self.powi(-1)
    }

    pub fn conj(&self) -> Self {
        Self::new(self.log_mag.clone(), -self.phase.clone())
    }

    /// Sum in the given order.
    ///
    /// Terms are scaled by the largest magnitude, accumulated with compensated
    /// summation and re-encoded. A result below the rounding floor of the
    /// scaled terms (a few ulps times their total magnitude) is returned as
    /// exact zero. The empty sum is zero.
    pub fn sum(terms: &[Self]) -> Self {
        let Some(first) = terms.iter().find(|t| !t.is_zero()) else {
            return Self::zero(Precision::default());
        };
        let mut max = first.log_mag.clone();
        for t in terms {
            if !t.is_zero() && t.log_mag > max {
                max = t.log_mag.clone();
            }
        }
        let zero = max.zero_like();
        let mut re = CompensatedSum::new(zero.clone());
        let mut im = CompensatedSum::new(zero.clone());
        let mut weight = CompensatedSum::new(zero);
        for t in terms.iter().filter(|t| !t.is_zero()) {
            let w = (t.log_mag.clone() - max.clone()).exp();
            re.add(w.clone() * t.phase.cos());
            im.add(w.clone() * t.phase.sin());
            weight.add(w);
        }
        let (re, im) = (re.total(), im.total());
        let r = re.hypot(&im);
        let floor = 8.0 * max.epsilon() * weight.total().to_f64();
        if r.is_zero() || r.to_f64() <= floor {
            return Self::zero(max.precision());
        }
        Self::new(max + r.ln(), im.atan2(&re))
    }

    /// `(e^log_mag cos phase, e^log_mag sin phase)`; fails when the magnitude
    /// is not representable in the working precision.
    pub fn to_cartesian(&self) -> Result<(R, R)> {
        if self.is_zero() {
            let z = self.phase.zero_like();
            return Ok((z.clone(), z));
        }
        let lm = self.log_mag.to_f64();
        if !(lm <= self.log_mag.max_ln()) {
            return Err(Error::Overflow { log_mag: lm });
        }
        let m = self.log_mag.exp();
        Ok((m.clone() * self.phase.cos(), m * self.phase.sin()))
    }

    pub fn to_f64(&self) -> LogComplex<f64> {
        LogComplex {
            log_mag: self.log_mag.to_f64(),
            phase: normalize_phase(self.phase.to_f64()),
        }
    }

    /// `|self - other| / max(|self|, |other|)`, evaluated from log-domain differences.
    pub fn relative_distance(&self, other: &Self) -> f64 {
        match (self.is_zero(), other.is_zero()) {
            (true, true) => return 0.0,
            (true, false) | (false, true) => return 1.0,
            _ => {}
        }
        let mut d = (other.log_mag.clone() - self.log_mag.clone()).to_f64();
        let mut dp = angle_diff(other.phase.to_f64(), self.phase.to_f64());
        if d > 0.0 {
            d = -d;
            dp = -dp;
        }
        // |e^(d + i dp) - 1| with d <= 0, accurate for small arguments
        let half = (dp / 2.0).sin();
        let re = d.exp_m1() * dp.cos() - 2.0 * half * half;
        let im = d.exp() * dp.sin();
        re.hypot(im)
    }
}

impl LogComplex<f64> {
    /// Lift an `f64` value into the multiprecision backend.
    pub fn to_mp(&self, prec: Precision) -> LogComplex<MpFloat> {
        LogComplex {
            log_mag: MpFloat::from_f64(self.log_mag, prec),
            phase: MpFloat::from_f64(self.phase, prec),
        }
    }
}

impl<R: Real> PartialEq for LogComplex<R> {
    fn eq(&self, other: &Self) -> bool {
        (self.is_zero() && other.is_zero())
            || (self.log_mag == other.log_mag && self.phase == other.phase)
    }
}

impl fmt::Display for LogComplex<f64> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            write!(f, "0")
        } else {
            write!(f, "exp({} + {}i)", self.log_mag, self.phase)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;
    use proptest::prelude::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, LN_2, PI};

    fn lc(m: f64, p: f64) -> LogComplex {
        LogComplex::new(m, p)
    }

    fn cart(x: &LogComplex) -> Complex64 {
        let (re, im) = x.to_cartesian().unwrap();
        Complex64::new(re, im)
    }

    const TOL: f64 = 1e-14;

    #[test]
    fn mul_examples() {
        assert_eq!(lc(0.0, 0.0).mul(&lc(0.0, 0.0)), lc(0.0, 0.0));
        let p = lc(1.0, FRAC_PI_2).mul(&lc(2.0, FRAC_PI_2));
        assert_eq!(*p.log_mag(), 3.0);
        assert_eq!(*p.phase(), PI);
        // ordinary complex oracle: 2 e^{0.3 i} * 3 e^{-0.1 i}
        let got = lc(2f64.ln(), 0.3).mul(&lc(3f64.ln(), -0.1));
        let want = Complex64::from_polar(2.0, 0.3) * Complex64::from_polar(3.0, -0.1);
        assert!((got.log_mag() - want.norm().ln()).abs() < TOL);
        assert!((got.phase() - want.arg()).abs() < TOL);
        assert!((got.log_mag() - 6f64.ln()).abs() < TOL && (got.phase() - 0.2).abs() < TOL);
    }

    #[test]
    fn zero_absorbs() {
        let z = LogComplex::<f64>::zero(Precision::default());
        assert!(lc(5.0, 1.0).mul(&z).is_zero());
        assert_eq!(z, LogComplex::new(f64::NEG_INFINITY, 2.0));
    }

    #[test]
    fn pow_examples() {
        assert_eq!(lc(3.0, 1.0).powi(0).unwrap(), lc(0.0, 0.0));
        let c = lc(LN_2, FRAC_PI_3).powi(3).unwrap();
        assert!((c.log_mag() - 8f64.ln()).abs() < TOL);
        assert!(angle_diff(*c.phase(), PI).abs() < TOL);
        // ordinary complex oracle: (e^{0.5} e^{0.4i})^{-2}
        let got = lc(0.5, 0.4).powi(-2).unwrap();
        let want = Complex64::from_polar(0.5f64.exp(), 0.4).powi(-2);
        assert!((got.log_mag() - want.norm().ln()).abs() < TOL);
        assert!((got.phase() - want.arg()).abs() < TOL);
        assert!((got.log_mag() + 1.0).abs() < TOL && (got.phase() + 0.8).abs() < TOL);
    }

    #[test]
    fn zero_to_negative_power_is_an_error() {
        let z = LogComplex::<f64>::zero(Precision::default());
        assert_eq!(z.powi(-1), Err(Error::ZeroToNegativePower(-1)));
        assert!(z.powi(2).unwrap().is_zero());
        assert_eq!(z.powi(0).unwrap(), lc(0.0, 0.0));
    }

    #[test]
    fn sum_examples() {
        let x = lc(1.5, -0.7);
        assert_eq!(LogComplex::sum(&[x.clone()]), x);
        assert!(LogComplex::sum(&[lc(0.0, 0.0), lc(0.0, PI)]).is_zero());
        let s = LogComplex::sum(&[lc(0.0, 0.0), lc(LN_2, 0.0), lc(3f64.ln(), 0.0)]);
        assert!((s.log_mag() - 6f64.ln()).abs() < TOL);
        assert_eq!(*s.phase(), 0.0);
        assert!(LogComplex::<f64>::sum(&[]).is_zero());
    }

    #[test]
    fn sum_survives_huge_magnitudes() {
        // e^1200 + e^1200 = 2 e^1200, far outside the f64 range
        let s = LogComplex::sum(&[lc(1200.0, 0.5), lc(1200.0, 0.5), lc(-5000.0, 1.0)]);
        assert!((s.log_mag() - (1200.0 + LN_2)).abs() < TOL * 1200.0);
        assert!((s.phase() - 0.5).abs() < TOL);
        assert!(matches!(s.to_cartesian(), Err(Error::Overflow { .. })));
    }

    #[test]
    fn cartesian_examples() {
        assert_eq!(lc(0.0, 0.0).to_cartesian().unwrap(), (1.0, 0.0));
        assert_eq!(
            LogComplex::new(f64::NEG_INFINITY, 1.3)
                .to_cartesian()
                .unwrap(),
            (0.0, 0.0)
        );
        let (re, im) = lc(LN_2, FRAC_PI_2).to_cartesian().unwrap();
        assert!(re.abs() < TOL && (im - 2.0).abs() < TOL);
    }

    #[test]
    fn unit_pi_fraction_reduces_exactly() {
        let u = LogComplex::<f64>::unit_pi_fraction(7, 2, Precision::default());
        assert!(angle_diff(*u.phase(), -FRAC_PI_2).abs() < TOL);
        let v = LogComplex::<f64>::unit_pi_fraction(3, 1, Precision::default());
        assert_eq!(*v.phase(), PI);
        let w = LogComplex::<f64>::unit_pi_fraction(
            -4_000_000_001,
            1_000_000_000,
            Precision::default(),
        );
        assert!((w.phase() + 1e-9 * PI).abs() < 1e-20);
    }

    #[test]
    fn relative_distance_is_symmetric_and_small_for_close_values() {
        let a = lc(10.0, 0.1);
        let b = lc(10.0 + 1e-9, 0.1 - 2e-9);
        let d = a.relative_distance(&b);
        assert!((d - (1e-18f64 + 4e-18).sqrt()).abs() < 1e-15);
        assert_eq!(d, b.relative_distance(&a));
        assert_eq!(
            a.relative_distance(&LogComplex::zero(Precision::default())),
            1.0
        );
    }

    #[test]
    fn mp_backend_agrees_with_f64() {
        let prec = Precision::new(40).unwrap();
        let terms: Vec<_> = (0..20)
            .map(|i| lc(i as f64 * 0.37, i as f64 * 1.1))
            .collect();
        let f = LogComplex::sum(&terms);
        let mp_terms: Vec<_> = terms.iter().map(|t| t.to_mp(prec)).collect();
        let m = LogComplex::sum(&mp_terms).to_f64();
        assert!(f.relative_distance(&m) < 1e-14);
        let minus_one = LogComplex::<MpFloat>::unit_pi_fraction(1, 1, prec);
        assert!(LogComplex::sum(&[LogComplex::one(prec), minus_one]).is_zero());
        // the f64 approximation of pi is not cancelled at 40 digits
        let near = LogComplex::sum(&[lc(0.0, 0.0).to_mp(prec), lc(0.0, PI).to_mp(prec)]).to_f64();
        assert!((near.log_mag() - 1.2246467991473532e-16f64.ln()).abs() < 1e-10);
    }

    fn arb_lc() -> impl Strategy<Value = LogComplex> {
        (-20.0..20.0f64, -PI..PI).prop_map(|(m, p)| lc(m, p))
    }

    proptest! {
        #[test]
        fn mul_matches_cartesian(x in arb_lc(), y in arb_lc()) {
            let got = cart(&x.mul(&y));
            let want = cart(&x) * cart(&y);
            prop_assert!((got - want).norm() <= 1e-14 * want.norm().max(f64::MIN_POSITIVE));
        }

        #[test]
        fn powi_matches_repeated_mul(x in arb_lc(), e in -20i64..=20) {
            let mut acc = LogComplex::one(Precision::default());
            let base = if e < 0 { x.recip().unwrap() } else { x.clone() };
            for _ in 0..e.abs() {
                acc = acc.mul(&base);
            }
            prop_assert!(x.powi(e).unwrap().relative_distance(&acc) <= 1e-14 * (1.0 + e.abs() as f64 * 20.0));
        }

        #[test]
        fn sum_is_deterministic_and_order_stable(xs in proptest::collection::vec(arb_lc(), 1..40)) {
            let a = LogComplex::sum(&xs);
            let b = LogComplex::sum(&xs);
            prop_assert_eq!(a.log_mag().to_bits(), b.log_mag().to_bits());
            prop_assert_eq!(a.phase().to_bits(), b.phase().to_bits());
            let mut sorted = xs.clone();
            sorted.sort_by(|p, q| p.log_mag().partial_cmp(q.log_mag()).unwrap());
            let c = LogComplex::sum(&sorted);
            // relative to the largest term: sums may cancel
            let scale = xs.iter().map(|t| *t.log_mag()).fold(f64::MIN, f64::max);
            let ca = cart(&a.mul(&LogComplex::from_log_mag(-scale)));
            let cc = cart(&c.mul(&LogComplex::from_log_mag(-scale)));
            prop_assert!((ca - cc).norm() <= 1e-14 * xs.len() as f64);
        }
    }
}
