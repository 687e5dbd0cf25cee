use std::collections::BTreeMap;
use std::fmt;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::abelian::FgAbelian;
use crate::error::Error;
use crate::int::Int;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Status {
    Verified,
    Partial,
    Failed,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Verified => "VERIFIED",
            Status::Partial => "PARTIAL",
            Status::Failed => "FAILED",
        })
    }
}

/// Outcome of one check on one instance.
///
/// A `Failed` report always carries at least one witness: a vector, word or
/// error message showing where the asserted identity breaks.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub check: String,
    pub params: BTreeMap<String, String>,
    pub status: Status,
    pub lhs_invariants: Vec<Int>,
    pub rhs_invariants: Vec<Int>,
    pub witnesses: Vec<String>,
    pub millis: u64,
    /// Named auxiliary invariants, e.g. every term of an exact sequence.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub details: BTreeMap<String, String>,
}

impl CheckReport {
    pub fn new(check: &str) -> Self {
        CheckReport {
            check: check.to_string(),
            params: BTreeMap::new(),
            status: Status::Verified,
            lhs_invariants: Vec::new(),
            rhs_invariants: Vec::new(),
            witnesses: Vec::new(),
            millis: 0,
            details: BTreeMap::new(),
        }
    }

    pub fn param(mut self, key: &str, value: impl ToString) -> Self {
        self.params.insert(key.to_string(), value.to_string());
        self
    }

    pub fn sides(&mut self, lhs: &FgAbelian, rhs: &FgAbelian) {
        self.lhs_invariants = lhs.invariant_factors().to_vec();
        self.rhs_invariants = rhs.invariant_factors().to_vec();
    }

    pub fn detail(&mut self, key: &str, value: impl ToString) {
        self.details.insert(key.to_string(), value.to_string());
    }

    pub fn witness(&mut self, w: impl Into<String>) {
        self.witnesses.push(w.into());
    }

    /// Marks the report failed with a counterexample.
    pub fn fail(&mut self, counterexample: impl Into<String>) {
        self.status = Status::Failed;
        self.witnesses.push(counterexample.into());
    }

    /// Downgrades a verified report to partial; failures stay failures.
    pub fn partial(&mut self, why: &str) {
        if self.status == Status::Verified {
            self.status = Status::Partial;
        }
        self.detail("partial", why);
    }

    pub fn is_failed(&self) -> bool {
        self.status == Status::Failed
    }

    /// Turns an error raised inside a check into a failed report.
    pub fn from_error(check: &str, params: BTreeMap<String, String>, e: &Error) -> Self {
        let mut r = CheckReport::new(check);
        r.params = params;
        r.fail_with(e);
        r
    }

    fn fail_with(&mut self, e: &Error) {
        self.fail(format!("error: {e}"));
        self.detail("error", if e.is_usage() { "usage" } else { "internal" });
    }

    /// Whether the report failed on bad input or a resource limit.
    pub fn is_usage_error(&self) -> bool {
        self.is_failed() && self.details.get("error").is_some_and(|k| k == "usage")
    }

    /// Runs `body` and records its wall time.
    pub fn timed(mut self, body: impl FnOnce(&mut CheckReport) -> crate::Result<()>) -> Self {
        let start = Instant::now();
        if let Err(e) = body(&mut self) {
            self.fail_with(&e);
        }
        self.millis = start.elapsed().as_millis() as u64;
        self
    }
}

/// Process exit status for a batch: 0 when nothing failed, 1 when an identity
/// failed, 2 when the only failures are usage or resource errors.
pub fn exit_code(reports: &[CheckReport]) -> i32 {
    if reports.iter().any(|r| r.is_failed() && !r.is_usage_error()) {
        1
    } else if reports.iter().any(CheckReport::is_usage_error) {
        2
    } else {
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_shape() {
        let r = CheckReport::new("D3FR").param("relators", "x1^2").timed(|r| {
            r.sides(&FgAbelian::cyclic(2), &FgAbelian::cyclic(2));
            Ok(())
        });
        let v = serde_json::to_value(&r).unwrap();
        for key in ["check", "params", "status", "lhs_invariants", "rhs_invariants", "witnesses", "millis"] {
            assert!(v.get(key).is_some(), "{key}");
        }
        assert_eq!(v["status"], "VERIFIED");
        assert_eq!(v["lhs_invariants"], serde_json::json!([2]));
    }

    #[test]
    fn errors_become_failures_with_witnesses() {
        let r = CheckReport::new("X").timed(|_| Err(Error::NotAComplex(2)));
        assert!(r.is_failed());
        assert!(!r.witnesses.is_empty());
    }

    #[test]
    fn exit_code_precedence() {
        let ok = CheckReport::new("A").timed(|_| Ok(()));
        let usage = CheckReport::new("B").timed(|_| Err(Error::InvalidConfig("x".into())));
        let mut failed = CheckReport::new("C");
        failed.fail("counterexample");
        assert_eq!(exit_code(std::slice::from_ref(&ok)), 0);
        assert_eq!(exit_code(&[ok.clone(), usage.clone()]), 2);
        assert_eq!(exit_code(&[usage, failed, ok]), 1);
    }
}
