use super::Real;

/// Neumaier's variant of Kahan summation.
///
/// Order-dependent but deterministic: the same sequence of `add` calls
/// always yields the same bits.
#[derive(Debug, Clone)]
pub struct CompensatedSum<R: Real> {
    sum: R,
    compensation: R,
}

impl<R: Real> CompensatedSum<R> {
    pub fn new(zero: R) -> Self {
        Self {
            sum: zero.clone(),
            compensation: zero,
        }
    }

    #[inline]
    pub fn add(&mut self, value: R) {
        let t = self.sum.clone() + value.clone();
        if self.sum.abs() >= value.abs() {
            self.compensation =
                self.compensation.clone() + ((self.sum.clone() - t.clone()) + value);
        } else {
            self.compensation =
                self.compensation.clone() + ((value - t.clone()) + self.sum.clone());
        }
        self.sum = t;
    }

    pub fn total(&self) -> R {
        self.sum.clone() + self.compensation.clone()
    }
}

/// Compensated sum of an `f64` sequence in iteration order.
pub fn compensated_sum<I: IntoIterator<Item = f64>>(values: I) -> f64 {
    let mut acc = CompensatedSum::new(0.0);
    for v in values {
        acc.add(v);
    }
    acc.total()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_lost_low_bits() {
        // 1 + 1e-16 * 10 loses everything in naive summation
        let mut xs = vec![1.0];
        xs.extend(std::iter::repeat(1e-16).take(10));
        let naive: f64 = xs.iter().sum();
        assert_eq!(naive, 1.0);
        assert!((compensated_sum(xs) - (1.0 + 1e-15)).abs() < 1e-30);
    }

    #[test]
    fn handles_large_cancellation() {
        let xs = [1e100, 1.0, -1e100];
        assert_eq!(compensated_sum(xs), 1.0);
    }

    #[test]
    fn empty_is_zero() {
        assert_eq!(compensated_sum(std::iter::empty()), 0.0);
    }
}
