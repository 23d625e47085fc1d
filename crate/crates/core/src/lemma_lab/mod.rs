//! Numerical checks of the estimates behind the asymptotic expansion.
//!
//! Each check returns a [`LemmaReport`]; failed checks are report contents,
//! not errors. Errors are reserved for inputs a check cannot run on.

mod central;
mod critical;
mod growth;
mod prefix_check;

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::invariant::ChainParams;

pub use central::{partition_counts, verify_lemma2, Lemma2Reports, Region};
pub use critical::{f_surface, verify_critical_point};
pub use growth::{verify_lemma45, verify_main_fit, FitTolerance};
pub use prefix_check::{
    direct_log_s_max, max_term_ratio, prefix_expansion_residual, verify_lemma3,
};

/// Which estimate a report is about.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum LemmaId {
    /// Critical point of the volume surface `f(x, y)`.
    FCritical,
    /// Gaussian approximation of `S_{n,k}` near the maximum.
    L2a,
    /// Exponential suppression of `S_{n,k}` away from the maximum.
    L2b,
    /// Growth of the maximal term `S~_N`.
    L3,
    /// Convergence of the normalized quotient `Q_N`.
    L4Qn,
    /// `J_N / predicted -> 1` for `b >= 2`.
    L5Ratio,
    /// Least-squares fit of `log|J_N|` against the predicted volume and `log N` coefficient.
    MainFit,
}

/// Outcome of one verification run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LemmaReport {
    pub lemma_id: LemmaId,
    pub passed: bool,
    /// Labelled numbers that the verdict was based on.
    pub residuals: Vec<(String, f64)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fitted_exponents: Option<BTreeMap<String, f64>>,
    pub notes: String,
}

impl LemmaReport {
    fn new(lemma_id: LemmaId) -> Self {
        Self {
            lemma_id,
            passed: false,
            residuals: Vec::new(),
            fitted_exponents: None,
            notes: String::new(),
        }
    }

    fn push(&mut self, label: impl Into<String>, value: f64) {
        self.residuals.push((label.into(), value));
    }

    fn fitted(&mut self, label: &str, value: f64) {
        self.fitted_exponents
            .get_or_insert_with(BTreeMap::new)
            .insert(label.to_owned(), value);
    }

    fn note(&mut self, text: impl AsRef<str>) {
        if !self.notes.is_empty() {
            self.notes.push_str("; ");
        }
        self.notes.push_str(text.as_ref());
    }

    /// Value of the first residual with this label.
    pub fn residual(&self, label: &str) -> Option<f64> {
        self.residuals
            .iter()
            .find(|(l, _)| l == label)
            .map(|(_, v)| *v)
    }
}

/// Exponent `delta` separating Central from Far, with its admissible window.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DeltaWindow {
    pub delta: f64,
    pub lower: f64,
    pub upper: f64,
}

impl DeltaWindow {
    /// Window `(1/2, (c+d+5) / (2(c+d+4)))` for `clasps = c + d`.
    pub fn new(delta: f64, clasps: i64) -> Result<Self> {
        let clasps = clasps as f64;
        let lower = 0.5;
        let upper = (clasps + 5.0) / (2.0 * (clasps + 4.0));
        if !(lower < delta && delta < upper) {
            return Err(Error::InvalidParams(format!(
                "delta = {delta} is outside ({lower}, {upper})"
            )));
        }
        Ok(Self {
            delta,
            lower,
            upper,
        })
    }
}

/// Midpoint of the admissible window.
pub fn default_delta(params: &ChainParams) -> DeltaWindow {
    let clasps = params.clasps() as f64;
    let upper = (clasps + 5.0) / (2.0 * (clasps + 4.0));
    DeltaWindow {
        delta: (0.5 + upper) / 2.0,
        lower: 0.5,
        upper,
    }
}

/// `true` when every value is below its predecessor, treating values under
/// `floor` as already converged.
fn decreasing(values: &[f64], floor: f64) -> bool {
    values
        .windows(2)
        .all(|w| w[1] < w[0] || (w[0] <= floor && w[1] <= floor))
}
