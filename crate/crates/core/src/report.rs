//! Pass/fail verdicts with lexicographically ordered counterexamples.

use std::fmt;

use crate::field::Scalar;

/// Default number of counterexamples retained per report.
pub const DEFAULT_VIOLATION_LIMIT: usize = 5;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    /// 1-based basis indices of the failing tuple.
    pub tuple: Vec<usize>,
    /// Which clause of a compound axiom failed (`None` for single identities).
    pub part: Option<String>,
    pub lhs: Vec<Scalar>,
    pub rhs: Vec<Scalar>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomReport {
    pub axiom: String,
    /// Human-readable statement of the identity being checked.
    pub identity: String,
    pub pass: bool,
    /// Number of basis tuples evaluated.
    pub checked: u64,
    /// Total number of failing tuples, including those beyond the cap.
    pub failures: u64,
    pub violations: Vec<Violation>,
}

impl AxiomReport {
    /// Combine clause reports into one verdict. Violations are re-sorted by
    /// tuple and truncated to `limit`.
    pub fn combine(
        axiom: impl Into<String>,
        identity: impl Into<String>,
        parts: Vec<AxiomReport>,
        limit: usize,
    ) -> AxiomReport {
        let mut violations: Vec<Violation> = Vec::new();
        let mut checked = 0;
        let mut failures = 0;
        for p in parts {
            checked += p.checked;
            failures += p.failures;
            let part = p.axiom.clone();
            violations.extend(p.violations.into_iter().map(|mut v| {
                v.part.get_or_insert_with(|| part.clone());
                v
            }));
        }
        // stable: clause order breaks ties
        violations.sort_by(|a, b| a.tuple.cmp(&b.tuple));
        violations.truncate(limit);
        AxiomReport {
            axiom: axiom.into(),
            identity: identity.into(),
            pass: failures == 0,
            checked,
            failures,
            violations,
        }
    }

    pub fn first_tuple(&self) -> Option<&[usize]> {
        self.violations.first().map(|v| v.tuple.as_slice())
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{}: {} ({} tuples checked, {} failing)",
            self.axiom,
            if self.pass { "PASS" } else { "FAIL" },
            self.checked,
            self.failures
        )?;
        writeln!(f, "  identity: {}", self.identity)?;
        for v in &self.violations {
            let show = |xs: &[Scalar]| {
                xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
            };
            let tuple: Vec<String> = v.tuple.iter().map(ToString::to_string).collect();
            write!(f, "  at ({})", tuple.join(","))?;
            if let Some(p) = &v.part {
                write!(f, " [{p}]")?;
            }
            writeln!(f, ": lhs = ({}), rhs = ({})", show(&v.lhs), show(&v.rhs))?;
        }
        Ok(())
    }
}

/// Accumulates comparisons for one identity in tuple order.
pub(crate) struct ReportBuilder {
    axiom: String,
    identity: String,
    limit: usize,
    checked: u64,
    failures: u64,
    violations: Vec<Violation>,
}

impl ReportBuilder {
    pub fn new(axiom: &str, identity: &str, limit: usize) -> Self {
        ReportBuilder {
            axiom: axiom.to_string(),
            identity: identity.to_string(),
            limit: limit.max(1),
            checked: 0,
            failures: 0,
            violations: Vec::new(),
        }
    }

    /// Record one evaluated tuple (0-based indices).
    pub fn compare(&mut self, tuple: &[usize], lhs: Vec<Scalar>, rhs: Vec<Scalar>) {
        self.checked += 1;
        if lhs != rhs {
            self.failures += 1;
            if self.violations.len() < self.limit {
                self.violations.push(Violation {
                    tuple: tuple.iter().map(|i| i + 1).collect(),
                    part: None,
                    lhs,
                    rhs,
                });
            }
        }
    }

    /// Append a builder that covered later tuples.
    pub fn absorb(&mut self, later: ReportBuilder) {
        self.checked += later.checked;
        self.failures += later.failures;
        let room = self.limit.saturating_sub(self.violations.len());
        self.violations.extend(later.violations.into_iter().take(room));
    }

    pub fn finish(self) -> AxiomReport {
        AxiomReport {
            axiom: self.axiom,
            identity: self.identity,
            pass: self.failures == 0,
            checked: self.checked,
            failures: self.failures,
            violations: self.violations,
        }
    }
}
