use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use super::Precision;

/// Scalar field used by the log-domain machinery.
///
/// Implemented by `f64` (the fast path) and by [`MpFloat`](super::MpFloat).
/// Constructors take an explicit [`Precision`]; values built from an existing
/// value inherit its precision through [`Real::precision`].
pub trait Real:
    Clone
    + Debug
    + PartialEq
    + PartialOrd
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn from_f64(x: f64, prec: Precision) -> Self;
    fn from_i64(x: i64, prec: Precision) -> Self;
    fn pi(prec: Precision) -> Self;
    fn neg_infinity(prec: Precision) -> Self;

    /// Precision this value carries.
    fn precision(&self) -> Precision;
    /// Relative rounding unit of the working precision.
    fn epsilon(&self) -> f64;
    /// Largest `x` for which `exp(x)` is representable.
    fn max_ln(&self) -> f64;

    fn exp(&self) -> Self;
    fn ln(&self) -> Self;
    fn sin(&self) -> Self;
    fn cos(&self) -> Self;
    fn sqrt(&self) -> Self;
    fn atan2(&self, x: &Self) -> Self;
    fn hypot(&self, other: &Self) -> Self;
    fn abs(&self) -> Self;

    fn to_f64(&self) -> f64;
    fn is_finite(&self) -> bool;
    fn is_neg_infinity(&self) -> bool;
    fn is_zero(&self) -> bool;

    /// `sin(pi num / den)` for `den > 0`.
    fn sin_pi_ratio(num: i64, den: i64, prec: Precision) -> Self {
        (Self::pi(prec) * Self::from_i64(num, prec) / Self::from_i64(den, prec)).sin()
    }

    fn zero_like(&self) -> Self {
        Self::from_i64(0, self.precision())
    }
    fn from_f64_like(&self, x: f64) -> Self {
        Self::from_f64(x, self.precision())
    }
    fn from_i64_like(&self, x: i64) -> Self {
        Self::from_i64(x, self.precision())
    }
}

impl Real for f64 {
    fn from_f64(x: f64, _: Precision) -> Self {
        x
    }
    fn from_i64(x: i64, _: Precision) -> Self {
        x as f64
    }
    fn pi(_: Precision) -> Self {
        std::f64::consts::PI
    }
    fn neg_infinity(_: Precision) -> Self {
        f64::NEG_INFINITY
    }
    fn precision(&self) -> Precision {
        Precision::default()
    }
    fn epsilon(&self) -> f64 {
        f64::EPSILON
    }
    fn max_ln(&self) -> f64 {
        f64::MAX.ln()
    }
    #[inline]
    fn exp(&self) -> Self {
        f64::exp(*self)
    }
    #[inline]
    fn ln(&self) -> Self {
        f64::ln(*self)
    }
    #[inline]
    fn sin(&self) -> Self {
        f64::sin(*self)
    }
    fn sin_pi_ratio(num: i64, den: i64, _: Precision) -> Self {
        // pi = PI + PI_LO; the argument is carried as hi + lo so that the
        // rounding of PI does not bias long sums of sines
        const PI_LO: f64 = 1.224_646_799_147_353_2e-16;
        let (n, d) = (num as f64, den as f64);
        let r = n / d;
        let r_err = (-r).mul_add(d, n) / d;
        let hi = std::f64::consts::PI * r;
        let lo = std::f64::consts::PI.mul_add(r, -hi) + PI_LO * r + std::f64::consts::PI * r_err;
        hi.sin() + hi.cos() * lo
    }
    #[inline]
    fn cos(&self) -> Self {
        f64::cos(*self)
    }
    fn sqrt(&self) -> Self {
        f64::sqrt(*self)
    }
    fn atan2(&self, x: &Self) -> Self {
        f64::atan2(*self, *x)
    }
    fn hypot(&self, other: &Self) -> Self {
        f64::hypot(*self, *other)
    }
    fn abs(&self) -> Self {
        f64::abs(*self)
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn is_finite(&self) -> bool {
        f64::is_finite(*self)
    }
    fn is_neg_infinity(&self) -> bool {
        *self == f64::NEG_INFINITY
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
}
