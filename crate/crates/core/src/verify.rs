//! Named suites of exhaustive checks, run per algebra.

use std::fmt;

use thiserror::Error;

use crate::algebra::{check_cidrl_identities, classify, require_sbp, Algebra};
use crate::filters::Spectrum;
use crate::report::{all_passed, Check, Tally};
use crate::{dual_quadruple, duality, filter_pairs, filters, quadruple};

pub const SUITES: [&str; 6] = [
    "algebra",
    "filters",
    "duality",
    "quadruples",
    "bowtie",
    "dual-quadruples",
];

/// Line printed by the bowtie suite when `α` passes all of its checks.
pub const ALPHA_SUMMARY: &str = "alpha: bijective, order-iso, ∘-compatible";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VerifyError {
    #[error("unknown suite `{0}`; expected one of {SUITES:?}")]
    UnknownSuite(String),
    #[error("suite `{suite}` does not apply to `{algebra}`: {reason}")]
    NotApplicable {
        suite: String,
        algebra: String,
        reason: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteRun {
    pub suite: &'static str,
    pub algebra: String,
    pub checks: Vec<Check>,
    pub summary: Option<String>,
}

impl SuiteRun {
    pub fn passed(&self) -> bool {
        all_passed(&self.checks)
    }
}

impl fmt::Display for SuiteRun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed() { "ok" } else { "FAILED" };
        writeln!(f, "[{}] {}: {verdict}", self.suite, self.algebra)?;
        for c in &self.checks {
            writeln!(f, "  {c}")?;
        }
        if let Some(s) = &self.summary {
            writeln!(f, "  {s}")?;
        }
        Ok(())
    }
}

fn suite_name(suite: &str) -> Result<&'static str, VerifyError> {
    SUITES
        .iter()
        .copied()
        .find(|&s| s == suite)
        .ok_or_else(|| VerifyError::UnknownSuite(suite.to_string()))
}

fn needs_sbp(suite: &str) -> bool {
    matches!(suite, "quadruples" | "bowtie" | "dual-quadruples")
}

/// Whether `suite` can run on `a`; the decomposition suites need an
/// sbp-algebra.
pub fn applies(suite: &str, a: &Algebra) -> Result<(), VerifyError> {
    let suite = suite_name(suite)?;
    if needs_sbp(suite) {
        require_sbp(a).map_err(|e| VerifyError::NotApplicable {
            suite: suite.to_string(),
            algebra: a.name().to_string(),
            reason: e.to_string(),
        })?;
    }
    Ok(())
}

fn errored(e: impl ToString) -> Vec<Check> {
    let mut t = Tally::new("suite ran to completion");
    t.fail(e.to_string());
    vec![t.finish()]
}

fn algebra_checks(a: &Algebra) -> Vec<Check> {
    let mut out: Vec<Check> = check_cidrl_identities(a)
        .into_iter()
        .map(|c| Check {
            name: format!("({}) {}", c.id, c.statement),
            passed: c.holds,
            cases: 1,
            detail: c
                .witness
                .map(|w| format!("witness {w:?}"))
                .unwrap_or_default(),
        })
        .collect();
    let report = classify(a);
    let mut t = Tally::new("no zero divisors iff directly indecomposable SMTL");
    if let Some(ok) = report.zero_divisor_equivalence() {
        t.case(ok, || {
            format!("zero divisors: {:?}", report.has_zero_divisors)
        });
    }
    out.push(t.finish());
    out
}

/// Runs one suite on one algebra. Failures inside the suite, including
/// assertion errors, become failed checks.
pub fn run_suite(suite: &str, a: &Algebra) -> Result<SuiteRun, VerifyError> {
    applies(suite, a)?;
    let suite = suite_name(suite)?;
    let mut summary = None;
    let checks = match suite {
        "algebra" => algebra_checks(a),
        "filters" => Spectrum::new(a)
            .map(|sp| filters::battery(&sp))
            .unwrap_or_else(errored),
        "duality" => duality::battery(a).unwrap_or_else(errored),
        "quadruples" => quadruple::battery(a),
        "bowtie" => {
            let checks = filter_pairs::battery(a).unwrap_or_else(errored);
            let alpha_ok = checks.iter().filter(|c| c.name.starts_with('α')).count() >= 2
                && checks
                    .iter()
                    .filter(|c| c.name.starts_with('α'))
                    .all(|c| c.passed);
            if alpha_ok {
                summary = Some(ALPHA_SUMMARY.to_string());
            }
            checks
        }
        "dual-quadruples" => {
            let mut out = dual_quadruple::check_mu_splitting(a).unwrap_or_else(errored);
            match dual_quadruple::extract_dual_quadruple(a) {
                Ok(dq) => out.extend(dual_quadruple::validate_dual_quadruple(&dq)),
                Err(e) => out.extend(errored(e)),
            }
            out.extend(dual_quadruple::commute_square(a).unwrap_or_else(errored));
            out
        }
        _ => unreachable!("suite names are checked"),
    };
    Ok(SuiteRun {
        suite,
        algebra: a.name().to_string(),
        checks,
        summary,
    })
}

/// Runs every suite that applies to each algebra.
pub fn run_all(algebras: &[Algebra]) -> Vec<SuiteRun> {
    let mut out = Vec::new();
    for suite in SUITES {
        for a in algebras {
            if let Ok(run) = run_suite(suite, a) {
                out.push(run);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn every_suite_passes_on_fixtures() {
        let runs = run_all(&fixtures::all());
        assert_eq!(runs.len(), SUITES.len() * fixtures::NAMES.len());
        for r in &runs {
            assert!(r.passed(), "{r}");
        }
    }

    #[test]
    fn bowtie_summary_on_nm4() {
        let run = run_suite("bowtie", &fixtures::nm4()).unwrap();
        assert_eq!(run.summary.as_deref(), Some(ALPHA_SUMMARY));
        assert!(run.to_string().contains(ALPHA_SUMMARY));
    }

    #[test]
    fn decomposition_suites_need_sbp() {
        let h = fixtures::heyting5();
        assert!(matches!(
            run_suite("bowtie", &h),
            Err(VerifyError::NotApplicable { .. })
        ));
        assert!(run_suite("algebra", &h).is_ok());
        assert!(matches!(
            run_suite("nope", &h),
            Err(VerifyError::UnknownSuite(_))
        ));
    }
}
