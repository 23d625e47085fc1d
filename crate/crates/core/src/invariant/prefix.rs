use crate::arith::{CompensatedSum, Precision, Real};
use crate::error::{Error, Result};

/// Prefix table `s[m] = -sum_{j=1}^{m} log(2 sin(j pi / N))` for `0 <= m < N`.
///
/// Every `S_{n,k}` is read off this table in O(1):
/// `log S_{n,k} = 2 (s[k] - s[k+n]) + s[n]`.
#[derive(Debug, Clone)]
pub struct SinePrefix<R: Real = f64> {
    color: usize,
    s: Vec<R>,
}

impl<R: Real> SinePrefix<R> {
    /// Build the table for color `N >= 1` in O(N).
    pub fn new(color: usize, prec: Precision) -> Result<Self> {
        if color == 0 {
            return Err(Error::InvalidParams("color N must be at least 1".into()));
        }
        let two = R::from_i64(2, prec);
        let mut acc = CompensatedSum::new(R::from_i64(0, prec));
        let mut s = Vec::with_capacity(color);
        s.push(acc.total());
        for j in 1..color {
            // sin(j pi/N) = sin((N - j) pi/N); the smaller angle keeps full relative accuracy
            let jj = j.min(color - j) as i64;
            let sine = R::sin_pi_ratio(jj, color as i64, prec);
            acc.add(-(two.clone() * sine).ln());
            s.push(acc.total());
        }
        Ok(Self { color, s })
    }

    pub fn color(&self) -> usize {
        self.color
    }

    pub fn values(&self) -> &[R] {
        &self.s
    }

    pub fn precision(&self) -> Precision {
        self.s[0].precision()
    }

    fn log_s_unchecked(&self, n: usize, k: usize) -> R {
        let two = self.s[0].from_i64_like(2);
        two * (self.s[k].clone() - self.s[k + n].clone()) + self.s[n].clone()
    }

    /// `log S_{n,k}` where `S_{n,k} = prod_{j=1}^{n} 2 sin^2((k+j) pi/N) / sin(j pi/N)`.
    pub fn log_s(&self, n: usize, k: usize) -> Result<R> {
        if n + k >= self.color {
            return Err(Error::IndexOutOfRange {
                n,
                k,
                color: self.color,
            });
        }
        Ok(self.log_s_unchecked(n, k))
    }

    /// `log sum_{k=0}^{N-1-n} S_{n,k}`. All terms are positive, so the
    /// largest is factored out and the rest accumulated without cancellation.
    pub fn log_clasp_sum(&self, n: usize) -> Result<R> {
        if n >= self.color {
            return Err(Error::IndexOutOfRange {
                n,
                k: 0,
                color: self.color,
            });
        }
        let last = self.color - 1 - n;
        let mut max = self.log_s_unchecked(n, 0);
        for k in 1..=last {
            let v = self.log_s_unchecked(n, k);
            if v > max {
                max = v;
            }
        }
        let mut acc = CompensatedSum::new(max.zero_like());
        for k in 0..=last {
            acc.add((self.log_s_unchecked(n, k) - max.clone()).exp());
        }
        Ok(max + acc.total().ln())
    }

    /// `log S~_N = log S_{floor(N/2), floor(N/4)}`, the entry at the continuous maximum.
    pub fn log_s_max(&self) -> R {
        self.log_s_unchecked(self.color / 2, self.color / 4)
    }
}

/// `SinePrefix::new` for the `f64` backend.
pub fn sine_prefix(color: usize) -> Result<SinePrefix<f64>> {
    SinePrefix::new(color, Precision::default())
}
