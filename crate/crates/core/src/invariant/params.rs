use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// The four integers `(a, b, c, d)` of a Whitehead chain `W_{a,b,c,d}`:
/// `a` twists (sign is handedness), `b >= 1` belts, `c >= 0` clasps and
/// `d >= 0` mirror clasps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct ChainParams {
    a: i64,
    b: i64,
    c: i64,
    d: i64,
}

impl ChainParams {
    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        if b < 1 {
            return Err(Error::InvalidParams(format!(
                "b must be at least 1 (got {b})"
            )));
        }
        if c < 0 || d < 0 {
            return Err(Error::InvalidParams(format!(
                "c and d must be non-negative (got c = {c}, d = {d})"
            )));
        }
        Ok(Self { a, b, c, d })
    }

    /// The Whitehead link `W_{0,1,1,0}`.
    pub fn whitehead_link() -> Self {
        Self {
            a: 0,
            b: 1,
            c: 1,
            d: 0,
        }
    }

    /// The Borromean rings `W_{0,1,1,1}`.
    pub fn borromean_rings() -> Self {
        Self {
            a: 0,
            b: 1,
            c: 1,
            d: 1,
        }
    }

    pub fn a(&self) -> i64 {
        self.a
    }

    pub fn b(&self) -> i64 {
        self.b
    }

    pub fn c(&self) -> i64 {
        self.c
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    /// Total clasp count `c + d`.
    pub fn clasps(&self) -> i64 {
        self.c + self.d
    }

    /// Exponent `4a - c + d` carried by the twist phase.
    pub fn twist_exponent(&self) -> i64 {
        4 * self.a - self.c + self.d
    }

    /// The mirror image `W_{-a,b,d,c}`.
    pub fn mirror(&self) -> Self {
        Self {
            a: -self.a,
            b: self.b,
            c: self.d,
            d: self.c,
        }
    }
}

impl fmt::Display for ChainParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "W_{{{},{},{},{}}}", self.a, self.b, self.c, self.d)
    }
}
