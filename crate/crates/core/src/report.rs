//! Outcomes of exhaustive checks.

use std::fmt;

use serde::Serialize;

/// The outcome of one universally quantified check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    /// Number of instances examined.
    pub cases: usize,
    /// First counterexample, or a summary when the check passed.
    pub detail: String,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed { "ok" } else { "FAILED" };
        write!(f, "{}: {verdict} ({} cases)", self.name, self.cases)?;
        if !self.detail.is_empty() {
            write!(f, " {}", self.detail)?;
        }
        Ok(())
    }
}

/// Accumulates cases for one [`Check`], keeping the first failure.
pub struct Tally {
    name: String,
    cases: usize,
    failure: Option<String>,
}

impl Tally {
    pub fn new(name: impl Into<String>) -> Self {
        Tally {
            name: name.into(),
            cases: 0,
            failure: None,
        }
    }

    pub fn case(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok && self.failure.is_none() {
            self.failure = Some(witness());
        }
    }

    pub fn fail(&mut self, witness: impl Into<String>) {
        self.case(false, || witness.into());
    }

    pub fn finish(self) -> Check {
        Check {
            passed: self.failure.is_none(),
            detail: self.failure.unwrap_or_default(),
            name: self.name,
            cases: self.cases,
        }
    }
}

/// Whether every check passed.
pub fn all_passed(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.passed)
}
