use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Requested number of significant decimal digits for a computation.
///
/// Up to [`Precision::NATIVE_DIGITS`] digits the native `f64` path is used;
/// anything above switches to [`MpFloat`](super::MpFloat).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Precision {
    digits: u32,
}

impl Precision {
    pub const MIN_DIGITS: u32 = 10;
    pub const DEFAULT_DIGITS: u32 = 16;
    pub const NATIVE_DIGITS: u32 = 16;
    pub const MAX_DIGITS: u32 = 1000;

    pub fn new(digits: u32) -> Result<Self> {
        if !(Self::MIN_DIGITS..=Self::MAX_DIGITS).contains(&digits) {
            return Err(Error::InvalidPrecision {
                digits,
                min: Self::MIN_DIGITS,
            });
        }
        Ok(Self { digits })
    }

    pub fn digits(self) -> u32 {
        self.digits
    }

    /// True when this precision needs the multiprecision backend.
    pub fn is_extended(self) -> bool {
        self.digits > Self::NATIVE_DIGITS
    }

    /// Working mantissa width for the multiprecision backend.
    pub fn bits(self) -> u32 {
        (self.digits as f64 * std::f64::consts::LOG2_10).ceil() as u32 + 8
    }

    pub(crate) fn from_bits(bits: u32) -> Self {
        let digits = (bits.saturating_sub(8) as f64 / std::f64::consts::LOG2_10).round() as u32;
        Self {
            digits: digits.clamp(Self::MIN_DIGITS, Self::MAX_DIGITS),
        }
    }

    /// `10^(2 - digits)`, the tolerance the library promises at this precision.
    pub fn tolerance(self) -> f64 {
        10f64.powi(2 - self.digits as i32)
    }
}

impl Default for Precision {
    fn default() -> Self {
        Self {
            digits: Self::DEFAULT_DIGITS,
        }
    }
}
