use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::numerics::Complex;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

/// Outcome of comparing the two sides of an identity or transformation.
///
/// Side values are kept both at working precision and as `[re, im]` doubles
/// for reporting.
#[derive(Clone, Debug, PartialEq)]
pub struct VerificationReport {
    pub identity: String,
    pub assignment: BTreeMap<String, [f64; 2]>,
    pub lhs: Option<Complex>,
    pub rhs: Option<Complex>,
    pub abs_err: f64,
    pub rel_err: f64,
    pub terms_lhs: u64,
    pub terms_rhs: u64,
    pub digits: u32,
    /// Set when the comparison was an exact rational equality test.
    pub exact: bool,
    pub verdict: Verdict,
    /// Why the verdict is inconclusive, when it is.
    pub reason: Option<String>,
}

impl VerificationReport {
    pub fn lhs_f64(&self) -> [f64; 2] {
        self.lhs.as_ref().map_or([f64::NAN; 2], Complex::to_f64_pair)
    }

    pub fn rhs_f64(&self) -> [f64; 2] {
        self.rhs.as_ref().map_or([f64::NAN; 2], Complex::to_f64_pair)
    }

    pub fn inconclusive(
        identity: impl Into<String>,
        assignment: BTreeMap<String, [f64; 2]>,
        digits: u32,
        reason: impl Into<String>,
    ) -> Self {
        Self {
            identity: identity.into(),
            assignment,
            lhs: None,
            rhs: None,
            abs_err: f64::NAN,
            rel_err: f64::NAN,
            terms_lhs: 0,
            terms_rhs: 0,
            digits,
            exact: false,
            verdict: Verdict::Inconclusive,
            reason: Some(reason.into()),
        }
    }
}

/// `|a - b| / max(|a|, |b|, floor)`; zero when both sides vanish.
pub fn relative_difference(a: &Complex, b: &Complex, floor: f64) -> (f64, f64) {
    let abs = (a - b).abs_f64();
    let scale = a.abs_f64().max(b.abs_f64()).max(floor);
    let rel = if abs == 0.0 { 0.0 } else { abs / scale };
    (abs, rel)
}
