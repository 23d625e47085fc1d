//! Binary floating point with a configurable mantissa width.
//!
//! A finite value is `mant * 2^exp` with `|mant| < 2^bits`, rounded to
//! nearest after every operation. Transcendental functions run in fixed
//! point with 32+ guard bits, so their results are accurate to a few units
//! in the last place of the working width. Only what the log-domain code
//! needs is provided; there is no attempt at correct (IEEE-style) rounding.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::collections::HashMap;
use std::f64::consts::{FRAC_PI_2, LN_2};
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{Precision, Real};

const GUARD_BITS: u32 = 32;

#[derive(Clone, Debug)]
enum Kind {
    Finite { mant: BigInt, exp: i64 },
    Inf { negative: bool },
    Nan,
}

#[derive(Clone, Debug)]
pub struct MpFloat {
    kind: Kind,
    bits: u32,
}

fn normalize(mant: BigInt, exp: i64, bits: u32) -> Kind {
    if mant.is_zero() {
        return Kind::Finite { mant, exp: 0 };
    }
    let len = mant.bits();
    if len <= bits as u64 {
        return Kind::Finite { mant, exp };
    }
    let shift = len - bits as u64;
    let (sign, mag) = mant.into_parts();
    let mut q = &mag >> shift;
    if mag.bit(shift - 1) {
        q += 1u32;
    }
    let mut e = exp + shift as i64;
    if q.bits() > bits as u64 {
        q >>= 1u32;
        e += 1;
    }
    Kind::Finite {
        mant: BigInt::from_biguint(sign, q),
        exp: e,
    }
}

/// `a * b / 2^w`, truncated toward zero.
fn mul_fixed(a: &BigInt, b: &BigInt, w: u32) -> BigInt {
    shr_trunc(a * b, w)
}

fn shr_trunc(x: BigInt, w: u32) -> BigInt {
    let (sign, mag) = x.into_parts();
    BigInt::from_biguint(sign, mag >> w)
}

fn bit_len(x: i64) -> u32 {
    64 - x.unsigned_abs().leading_zeros()
}

fn ldexp(mut x: f64, e: i64) -> f64 {
    let mut e = e.clamp(-4000, 4000);
    while e > 1000 {
        x *= 2f64.powi(1000);
        e -= 1000;
    }
    while e < -1000 {
        x *= 2f64.powi(-1000);
        e += 1000;
    }
    x * 2f64.powi(e as i32)
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
enum Constant {
    Pi,
    Ln2,
}

thread_local! {
    static CONSTANTS: RefCell<HashMap<(Constant, u32), BigInt>> = RefCell::new(HashMap::new());
}

/// `sum_i (-1)^i / ((2i+1) x^(2i+1))` in fixed point.
fn atan_inv(x: u32, w: u32) -> BigInt {
    let one = BigInt::one() << w;
    let x2 = BigInt::from(x) * x;
    let mut term = one / x;
    let mut sum = BigInt::zero();
    let mut i = 0u64;
    while !term.is_zero() {
        let t = &term / (2 * i + 1);
        if i % 2 == 0 {
            sum += t;
        } else {
            sum -= t;
        }
        term /= &x2;
        i += 1;
    }
    sum
}

fn constant_fixed(which: Constant, w: u32) -> BigInt {
    // Cache at the next multiple of 64 bits and shift down.
    let wc = w.div_ceil(64) * 64;
    let value = CONSTANTS.with(|cache| {
        cache
            .borrow_mut()
            .entry((which, wc))
            .or_insert_with(|| {
                let g = wc + 16;
                let v = match which {
                    Constant::Pi => atan_inv(5, g) * 16 - atan_inv(239, g) * 4,
                    Constant::Ln2 => {
                        let one = BigInt::one() << g;
                        let mut term: BigInt = one / 3;
                        let mut sum = BigInt::zero();
                        let mut i = 0u64;
                        while !term.is_zero() {
                            sum += &term / (2 * i + 1);
                            term /= 9;
                            i += 1;
                        }
                        sum << 1
                    }
                };
                v >> 16
            })
            .clone()
    });
    value >> (wc - w)
}

/// atan(z) for a fixed-point `|z| <= 1`.
fn atan_fixed(mut z: BigInt, w: u32) -> BigInt {
    let one = BigInt::one() << w;
    // atan z = 2 atan(z / (1 + sqrt(1 + z^2))); two halvings bring |z| below tan(pi/16).
    for _ in 0..2 {
        let z2 = mul_fixed(&z, &z, w);
        let radicand: BigInt = (&one + z2) << w;
        let root = BigInt::from(radicand.to_biguint().expect("positive radicand").sqrt());
        z = (z << w) / (&one + root);
    }
    let z2 = mul_fixed(&z, &z, w);
    let mut term = z.clone();
    let mut sum = z;
    let mut i = 1u64;
    loop {
        term = -mul_fixed(&term, &z2, w);
        let t = &term / (2 * i + 1);
        if t.is_zero() {
            break;
        }
        sum += t;
        i += 1;
    }
    sum << 2
}

impl MpFloat {
    fn finite(mant: BigInt, exp: i64, bits: u32) -> Self {
        Self {
            kind: normalize(mant, exp, bits),
            bits,
        }
    }

    fn from_fixed(f: BigInt, w: u32, bits: u32) -> Self {
        Self::finite(f, -(w as i64), bits)
    }

    fn nan(bits: u32) -> Self {
        Self {
            kind: Kind::Nan,
            bits,
        }
    }

    fn inf(negative: bool, bits: u32) -> Self {
        Self {
            kind: Kind::Inf { negative },
            bits,
        }
    }

    pub fn with_precision(x: f64, prec: Precision) -> Self {
        Self::from_bits_f64(x, prec.bits())
    }

    fn from_bits_f64(x: f64, bits: u32) -> Self {
        if x.is_nan() {
            return Self::nan(bits);
        }
        if x.is_infinite() {
            return Self::inf(x < 0.0, bits);
        }
        if x == 0.0 {
            return Self::finite(BigInt::zero(), 0, bits);
        }
        let (m, e, s) = num_traits::Float::integer_decode(x);
        let mant = BigInt::from(m) * i64::from(s);
        Self::finite(mant, i64::from(e), bits)
    }

    /// Mantissa width in bits.
    pub fn bits(&self) -> u32 {
        self.bits
    }

    fn rebits(&self, bits: u32) -> Self {
        match &self.kind {
            Kind::Finite { mant, exp } => Self::finite(mant.clone(), *exp, bits),
            k => Self {
                kind: k.clone(),
                bits,
            },
        }
    }

    /// -1, 0 or 1; NaN reports 0.
    fn signum_i(&self) -> i32 {
        match &self.kind {
            Kind::Finite { mant, .. } => match mant.sign() {
                Sign::Minus => -1,
                Sign::NoSign => 0,
                Sign::Plus => 1,
            },
            Kind::Inf { negative } => {
                if *negative {
                    -1
                } else {
                    1
                }
            }
            Kind::Nan => 0,
        }
    }

    /// floor(self * 2^w) for a finite value.
    fn to_fixed(&self, w: u32) -> BigInt {
        match &self.kind {
            Kind::Finite { mant, exp } => {
                let sh = exp + w as i64;
                if sh >= 0 {
                    mant << sh as u64
                } else {
                    mant >> (-sh) as u64
                }
            }
            _ => panic!("to_fixed on a non-finite value"),
        }
    }

    fn sincos_fixed(&self, w: u32) -> (BigInt, BigInt) {
        let xf = self.to_f64();
        let q = (xf / FRAC_PI_2).round() as i64;
        let extra = bit_len(q) + 8;
        let wq = w + extra;
        let half_pi = constant_fixed(Constant::Pi, wq) >> 1u32;
        let r = shr_trunc(self.to_fixed(wq) - BigInt::from(q) * half_pi, extra);
        let one = BigInt::one() << w;
        let r2 = mul_fixed(&r, &r, w);

        let mut sin = r.clone();
        let mut term = r;
        let mut i = 1u64;
        loop {
            term = -mul_fixed(&term, &r2, w) / ((2 * i) * (2 * i + 1));
            if term.is_zero() {
                break;
            }
            sin += &term;
            i += 1;
        }
        let mut cos = one.clone();
        let mut term = one;
        let mut i = 1u64;
        loop {
            term = -mul_fixed(&term, &r2, w) / ((2 * i - 1) * (2 * i));
            if term.is_zero() {
                break;
            }
            cos += &term;
            i += 1;
        }
        match q.rem_euclid(4) {
            0 => (sin, cos),
            1 => (cos, -sin),
            2 => (-sin, -cos),
            _ => (-cos, sin),
        }
    }

    fn cmp_finite(a: (&BigInt, i64), b: (&BigInt, i64)) -> Ordering {
        let sa = a.0.sign();
        let sb = b.0.sign();
        if sa != sb {
            return sa.cmp(&sb);
        }
        if sa == Sign::NoSign {
            return Ordering::Equal;
        }
        let ta = a.1 + a.0.bits() as i64;
        let tb = b.1 + b.0.bits() as i64;
        let mag = if ta != tb {
            ta.cmp(&tb)
        } else {
            let e = a.1.min(b.1);
            let ma = a.0.magnitude() << (a.1 - e) as u64;
            let mb = b.0.magnitude() << (b.1 - e) as u64;
            ma.cmp(&mb)
        };
        if sa == Sign::Plus {
            mag
        } else {
            mag.reverse()
        }
    }
}

impl PartialEq for MpFloat {
    fn eq(&self, other: &Self) -> bool {
        self.partial_cmp(other) == Some(Ordering::Equal)
    }
}

impl PartialOrd for MpFloat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match (&self.kind, &other.kind) {
            (Kind::Nan, _) | (_, Kind::Nan) => None,
            (Kind::Inf { negative: a }, Kind::Inf { negative: b }) => Some(b.cmp(a)),
            (Kind::Inf { negative }, _) => Some(if *negative {
                Ordering::Less
            } else {
                Ordering::Greater
            }),
            (_, Kind::Inf { negative }) => Some(if *negative {
                Ordering::Greater
            } else {
                Ordering::Less
            }),
            (Kind::Finite { mant: ma, exp: ea }, Kind::Finite { mant: mb, exp: eb }) => {
                Some(Self::cmp_finite((ma, *ea), (mb, *eb)))
            }
        }
    }
}

impl Add for MpFloat {
    type Output = MpFloat;

    fn add(self, rhs: MpFloat) -> MpFloat {
        let bits = self.bits.max(rhs.bits);
        match (self.kind, rhs.kind) {
            (Kind::Nan, _) | (_, Kind::Nan) => MpFloat::nan(bits),
            (Kind::Inf { negative: a }, Kind::Inf { negative: b }) => {
                if a == b {
                    MpFloat::inf(a, bits)
                } else {
                    MpFloat::nan(bits)
                }
            }
            (Kind::Inf { negative }, _) | (_, Kind::Inf { negative }) => {
                MpFloat::inf(negative, bits)
            }
            (Kind::Finite { mant: a, exp: ea }, Kind::Finite { mant: b, exp: eb }) => {
                if a.is_zero() {
                    return MpFloat::finite(b, eb, bits);
                }
                if b.is_zero() {
                    return MpFloat::finite(a, ea, bits);
                }
                let ta = ea + a.bits() as i64;
                let tb = eb + b.bits() as i64;
                let gap = bits as i64 + 2;
                if ta - tb > gap {
                    return MpFloat::finite(a, ea, bits);
                }
                if tb - ta > gap {
                    return MpFloat::finite(b, eb, bits);
                }
                let e = ea.min(eb);
                let m = (a << (ea - e) as u64) + (b << (eb - e) as u64);
                MpFloat::finite(m, e, bits)
            }
        }
    }
}

impl Neg for MpFloat {
    type Output = MpFloat;

    fn neg(self) -> MpFloat {
        let kind = match self.kind {
            Kind::Finite { mant, exp } => Kind::Finite { mant: -mant, exp },
            Kind::Inf { negative } => Kind::Inf {
                negative: !negative,
            },
            Kind::Nan => Kind::Nan,
        };
        MpFloat {
            kind,
            bits: self.bits,
        }
    }
}

impl Sub for MpFloat {
    type Output = MpFloat;

    fn sub(self, rhs: MpFloat) -> MpFloat {
        self + (-rhs)
    }
}

impl Mul for MpFloat {
    type Output = MpFloat;

    fn mul(self, rhs: MpFloat) -> MpFloat {
        let bits = self.bits.max(rhs.bits);
        let sign_neg = self.signum_i() * rhs.signum_i() < 0;
        match (self.kind, rhs.kind) {
            (Kind::Nan, _) | (_, Kind::Nan) => MpFloat::nan(bits),
            (Kind::Inf { .. }, Kind::Finite { mant, .. })
            | (Kind::Finite { mant, .. }, Kind::Inf { .. })
                if mant.is_zero() =>
            {
                MpFloat::nan(bits)
            }
            (Kind::Inf { .. }, _) | (_, Kind::Inf { .. }) => MpFloat::inf(sign_neg, bits),
            (Kind::Finite { mant: a, exp: ea }, Kind::Finite { mant: b, exp: eb }) => {
                MpFloat::finite(a * b, ea + eb, bits)
            }
        }
    }
}

impl Div for MpFloat {
    type Output = MpFloat;

    fn div(self, rhs: MpFloat) -> MpFloat {
        let bits = self.bits.max(rhs.bits);
        match (self.kind, rhs.kind) {
            (Kind::Nan, _) | (_, Kind::Nan) => MpFloat::nan(bits),
            (Kind::Inf { .. }, Kind::Inf { .. }) => MpFloat::nan(bits),
            (Kind::Inf { negative }, Kind::Finite { mant, .. }) => {
                let neg = if mant.is_negative() {
                    !negative
                } else {
                    negative
                };
                MpFloat::inf(neg, bits)
            }
            (Kind::Finite { .. }, Kind::Inf { .. }) => MpFloat::finite(BigInt::zero(), 0, bits),
            (Kind::Finite { mant: a, exp: ea }, Kind::Finite { mant: b, exp: eb }) => {
                if b.is_zero() {
                    return if a.is_zero() {
                        MpFloat::nan(bits)
                    } else {
                        MpFloat::inf(a.is_negative(), bits)
                    };
                }
                let s = (bits as i64 + 2 + b.bits() as i64 - a.bits() as i64).max(0);
                let q = (a << s as u64) / b;
                MpFloat::finite(q, ea - s - eb, bits)
            }
        }
    }
}

impl Real for MpFloat {
    fn from_f64(x: f64, prec: Precision) -> Self {
        Self::from_bits_f64(x, prec.bits())
    }

    fn from_i64(x: i64, prec: Precision) -> Self {
        Self::finite(BigInt::from(x), 0, prec.bits())
    }

    fn pi(prec: Precision) -> Self {
        let bits = prec.bits();
        let w = bits + GUARD_BITS;
        Self::from_fixed(constant_fixed(Constant::Pi, w), w, bits)
    }

    fn neg_infinity(prec: Precision) -> Self {
        Self::inf(true, prec.bits())
    }

    fn precision(&self) -> Precision {
        Precision::from_bits(self.bits)
    }

    fn epsilon(&self) -> f64 {
        ldexp(1.0, -(self.bits as i64 - 8))
    }

    fn max_ln(&self) -> f64 {
        1e15
    }

    fn exp(&self) -> Self {
        let bits = self.bits;
        match &self.kind {
            Kind::Nan => return Self::nan(bits),
            Kind::Inf { negative: true } => return Self::finite(BigInt::zero(), 0, bits),
            Kind::Inf { negative: false } => return Self::inf(false, bits),
            Kind::Finite { mant, .. } if mant.is_zero() => {
                return Self::from_i64(1, self.precision())
            }
            _ => {}
        }
        let xf = self.to_f64();
        let limit = (i64::MAX / 4) as f64 * LN_2;
        if xf > limit {
            return Self::inf(false, bits);
        }
        if xf < -limit {
            return Self::finite(BigInt::zero(), 0, bits);
        }
        let k = (xf / LN_2).round() as i64;
        let w = bits + GUARD_BITS + bit_len(k);
        let r = self.to_fixed(w) - BigInt::from(k) * constant_fixed(Constant::Ln2, w);
        // The same integer read at scale 2^(w + HALVINGS) is r / 2^HALVINGS.
        const HALVINGS: u32 = 8;
        let ws = w + HALVINGS;
        let one = BigInt::one() << ws;
        let mut sum = one.clone();
        let mut term = one;
        let mut i = 1u32;
        loop {
            term = mul_fixed(&term, &r, ws) / i;
            if term.is_zero() {
                break;
            }
            sum += &term;
            i += 1;
        }
        for _ in 0..HALVINGS {
            sum = mul_fixed(&sum, &sum, ws);
        }
        Self::finite(sum, k - ws as i64, bits)
    }

    fn ln(&self) -> Self {
        let bits = self.bits;
        let (mag, exp) = match &self.kind {
            Kind::Nan | Kind::Inf { negative: true } => return Self::nan(bits),
            Kind::Inf { negative: false } => return Self::inf(false, bits),
            Kind::Finite { mant, exp } => match mant.sign() {
                Sign::NoSign => return Self::inf(true, bits),
                Sign::Minus => return Self::nan(bits),
                Sign::Plus => (mant.magnitude().clone(), *exp),
            },
        };
        let len = mag.bits() as i64;
        let mut e2 = exp + len - 1;
        let w = bits + GUARD_BITS + bit_len(e2) + 1;
        let sh = w as i64 - (len - 1);
        let m: BigUint = if sh >= 0 {
            mag << sh as u64
        } else {
            mag >> (-sh) as u64
        };
        let mut m = BigInt::from(m);
        let one = BigInt::one() << w;
        if &m * &m > (&one * &one) << 1u32 {
            m >>= 1u32;
            e2 += 1;
        }
        // ln m = 2 atanh((m - 1) / (m + 1)), |z| < 0.172
        let z = ((&m - &one) << w) / (&m + &one);
        let z2 = mul_fixed(&z, &z, w);
        let mut term = z;
        let mut sum = BigInt::zero();
        let mut i = 0u64;
        while !term.is_zero() {
            sum += &term / (2 * i + 1);
            term = mul_fixed(&term, &z2, w);
            i += 1;
        }
        let res = (sum << 1u32) + BigInt::from(e2) * constant_fixed(Constant::Ln2, w);
        Self::from_fixed(res, w, bits)
    }

    fn sin(&self) -> Self {
        if !self.is_finite() {
            return Self::nan(self.bits);
        }
        let w = self.bits + GUARD_BITS;
        Self::from_fixed(self.sincos_fixed(w).0, w, self.bits)
    }

    fn cos(&self) -> Self {
        if !self.is_finite() {
            return Self::nan(self.bits);
        }
        let w = self.bits + GUARD_BITS;
        Self::from_fixed(self.sincos_fixed(w).1, w, self.bits)
    }

    fn sqrt(&self) -> Self {
        let bits = self.bits;
        match &self.kind {
            Kind::Nan | Kind::Inf { negative: true } => Self::nan(bits),
            Kind::Inf { negative: false } => Self::inf(false, bits),
            Kind::Finite { mant, exp } => match mant.sign() {
                Sign::Minus => Self::nan(bits),
                Sign::NoSign => self.clone(),
                Sign::Plus => {
                    let len = mant.bits() as i64;
                    let mut s = (2 * bits as i64 + 2 - len).max(0);
                    if (exp - s).rem_euclid(2) != 0 {
                        s += 1;
                    }
                    let root = (mant.magnitude() << s as u64).sqrt();
                    Self::finite(BigInt::from(root), (exp - s) / 2, bits)
                }
            },
        }
    }

    fn atan2(&self, x: &Self) -> Self {
        let bits = self.bits.max(x.bits);
        if matches!(self.kind, Kind::Nan) || matches!(x.kind, Kind::Nan) {
            return Self::nan(bits);
        }
        let prec = Precision::from_bits(bits);
        if !self.is_finite() || !x.is_finite() {
            return Self::from_f64(self.to_f64().atan2(x.to_f64()), prec);
        }
        let pi = Self::pi(prec);
        let sy = self.signum_i();
        let sx = x.signum_i();
        if sy == 0 {
            return if sx >= 0 { Self::from_i64(0, prec) } else { pi };
        }
        if sx == 0 {
            let half = pi / Self::from_i64(2, prec);
            return if sy > 0 { half } else { -half };
        }
        let w = bits + GUARD_BITS;
        let ay = self.abs().rebits(w);
        let ax = x.abs().rebits(w);
        let first_quadrant = if ay <= ax {
            Self::from_fixed(atan_fixed((ay / ax).to_fixed(w), w), w, bits)
        } else {
            let a = Self::from_fixed(atan_fixed((ax / ay).to_fixed(w), w), w, w);
            let half_pi = Self::from_fixed(constant_fixed(Constant::Pi, w) >> 1u32, w, w);
            (half_pi - a).rebits(bits)
        };
        match (sx > 0, sy > 0) {
            (true, true) => first_quadrant,
            (true, false) => -first_quadrant,
            (false, true) => pi - first_quadrant,
            (false, false) => first_quadrant - pi,
        }
    }

    fn hypot(&self, other: &Self) -> Self {
        (self.clone() * self.clone() + other.clone() * other.clone()).sqrt()
    }

    fn abs(&self) -> Self {
        if self.signum_i() < 0 {
            -self.clone()
        } else {
            self.clone()
        }
    }

    fn to_f64(&self) -> f64 {
        match &self.kind {
            Kind::Nan => f64::NAN,
            Kind::Inf { negative } => {
                if *negative {
                    f64::NEG_INFINITY
                } else {
                    f64::INFINITY
                }
            }
            Kind::Finite { mant, exp } => {
                if mant.is_zero() {
                    return 0.0;
                }
                let len = mant.bits();
                let shift = len.saturating_sub(64);
                let top = (mant.magnitude() >> shift).to_u64().expect("64-bit window") as f64;
                let v = ldexp(top, exp + shift as i64);
                if mant.is_negative() {
                    -v
                } else {
                    v
                }
            }
        }
    }

    fn is_finite(&self) -> bool {
        matches!(self.kind, Kind::Finite { .. })
    }

    fn is_neg_infinity(&self) -> bool {
        matches!(self.kind, Kind::Inf { negative: true })
    }

    fn is_zero(&self) -> bool {
        matches!(&self.kind, Kind::Finite { mant, .. } if mant.is_zero())
    }
}
