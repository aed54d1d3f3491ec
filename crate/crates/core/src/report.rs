//! Structured pass/fail results for identity checks.

use serde::Serialize;

use crate::error::Result;
use crate::kernel::{format_rational, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub n: usize,
    pub k: usize,
    pub expected: String,
    pub got: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub identity_id: String,
    pub n_range: [usize; 2],
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_failure: Option<Failure>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Check {
    /// Runs `body` against a fresh builder. An `Err` from the body counts as
    /// a failure carrying the error text.
    pub fn run(
        id: impl Into<String>,
        n_range: [usize; 2],
        body: impl FnOnce(&mut CheckBuilder) -> Result<()>,
    ) -> Check {
        let mut b = CheckBuilder::new(id, n_range);
        match body(&mut b) {
            Ok(()) => b.finish(),
            Err(e) => {
                let mut c = b.finish();
                c.status = Status::Fail;
                c.note = Some(e.to_string());
                c
            }
        }
    }

    pub fn skipped(id: impl Into<String>, n_range: [usize; 2], reason: impl Into<String>) -> Check {
        Check {
            identity_id: id.into(),
            n_range,
            status: Status::Skipped(reason.into()),
            first_failure: None,
            note: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }
}

/// Accumulates comparisons, keeping only the first mismatch.
#[derive(Debug)]
pub struct CheckBuilder {
    id: String,
    n_range: [usize; 2],
    failure: Option<Failure>,
    compared: usize,
}

impl CheckBuilder {
    pub fn new(id: impl Into<String>, n_range: [usize; 2]) -> Self {
        CheckBuilder {
            id: id.into(),
            n_range,
            failure: None,
            compared: 0,
        }
    }

    pub fn compare(&mut self, n: usize, k: usize, expected: &Rational, got: &Rational) {
        if expected != got {
            self.record(n, k, format_rational(expected), format_rational(got));
        } else {
            self.compared += 1;
        }
    }

    /// Compares any displayable values.
    pub fn compare_display<T: PartialEq + std::fmt::Display>(
        &mut self,
        n: usize,
        k: usize,
        expected: &T,
        got: &T,
    ) {
        if expected != got {
            self.record(n, k, expected.to_string(), got.to_string());
        } else {
            self.compared += 1;
        }
    }

    pub fn compare_rows(&mut self, n: usize, expected: &[Rational], got: &[Rational]) {
        let len = expected.len().max(got.len());
        let zero = Rational::default();
        for k in 0..len {
            let e = expected.get(k).unwrap_or(&zero);
            let g = got.get(k).unwrap_or(&zero);
            self.compare(n, k, e, g);
        }
    }

    pub fn record(&mut self, n: usize, k: usize, expected: String, got: String) {
        if self.failure.is_none() {
            self.failure = Some(Failure {
                n,
                k,
                expected,
                got,
            });
        }
    }

    pub fn is_failed(&self) -> bool {
        self.failure.is_some()
    }

    pub fn finish(self) -> Check {
        let status = if self.failure.is_some() {
            Status::Fail
        } else {
            Status::Pass
        };
        Check {
            identity_id: self.id,
            n_range: self.n_range,
            status,
            first_failure: self.failure,
            note: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub suite: String,
    pub family: String,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(suite: impl Into<String>, family: impl Into<String>) -> Self {
        Report {
            suite: suite.into(),
            family: family.into(),
            checks: Vec::new(),
        }
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn extend(&mut self, checks: impl IntoIterator<Item = Check>) {
        self.checks.extend(checks);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed())
    }

    /// Sorts checks by identity id for stable output.
    pub fn sorted(mut self) -> Self {
        self.checks
            .sort_by(|a, b| a.identity_id.cmp(&b.identity_id));
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::int;

    #[test]
    fn first_failure_is_kept() {
        let c = Check::run("demo", [0, 3], |b| {
            b.compare(0, 0, &int(1), &int(1));
            b.compare(2, 1, &int(3), &int(4));
            b.compare(3, 1, &int(5), &int(6));
            Ok(())
        });
        assert_eq!(c.status, Status::Fail);
        let f = c.first_failure.unwrap();
        assert_eq!(
            (f.n, f.k, f.expected.as_str(), f.got.as_str()),
            (2, 1, "3", "4")
        );
    }

    #[test]
    fn errors_become_failures_and_skips_pass() {
        let c = Check::run("err", [0, 1], |_| Err(crate::Error::ZeroDivisor));
        assert!(!c.passed());
        assert!(c.note.unwrap().contains("division"));
        assert!(Check::skipped("s", [0, 1], "why").passed());
    }

    #[test]
    fn json_shape() {
        let mut r = Report::new("suite", "fam");
        r.push(Check::skipped("x", [0, 8], "p_n(0) != 0"));
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["checks"][0]["status"]["skipped"], "p_n(0) != 0");
        assert_eq!(v["checks"][0]["n_range"][1], 8);
    }
}
