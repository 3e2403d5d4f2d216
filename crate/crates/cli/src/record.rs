//! One line of a report file.

use std::collections::BTreeMap;

use hyperxform::report::{Verdict, VerificationReport};
use serde::{Deserialize, Serialize};

/// Report record as written to disk. Side values are `[re, im]` doubles;
/// `null` marks a side that was not computed and a non-finite error.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReportRecord {
    pub identity: String,
    pub assignment: BTreeMap<String, [f64; 2]>,
    pub lhs: Option<[f64; 2]>,
    pub rhs: Option<[f64; 2]>,
    pub rel_err: Option<f64>,
    pub verdict: Verdict,
    pub terms_lhs: u64,
    pub terms_rhs: u64,
    pub seed: Option<u64>,
}

impl ReportRecord {
    pub fn from_report(report: &VerificationReport, seed: Option<u64>) -> Self {
        Self {
            identity: report.identity.clone(),
            assignment: report.assignment.clone(),
            lhs: report.lhs.as_ref().map(|v| v.to_f64_pair()),
            rhs: report.rhs.as_ref().map(|v| v.to_f64_pair()),
            rel_err: report.rel_err.is_finite().then_some(report.rel_err),
            verdict: report.verdict,
            terms_lhs: report.terms_lhs,
            terms_rhs: report.terms_rhs,
            seed,
        }
    }

    pub fn to_line(&self) -> String {
        serde_json::to_string(self).expect("finite fields serialize")
    }

    pub fn from_line(line: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(line)
    }
}

/// Parses a whole report file, one record per nonempty line.
pub fn read_records(text: &str) -> Result<Vec<ReportRecord>, String> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| ReportRecord::from_line(l).map_err(|e| format!("line {}: {e}", i + 1)))
        .collect()
}
