//! Outcome records for the exhaustive checking suites.

use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    /// Number of cases examined.
    pub cases: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl Check {
    pub fn pass(name: impl Into<String>, cases: u64) -> Self {
        Check {
            name: name.into(),
            passed: true,
            cases,
            witness: None,
        }
    }

    pub fn fail(name: impl Into<String>, cases: u64, witness: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            passed: false,
            cases,
            witness: Some(witness.into()),
        }
    }

    /// Pass when `witness` is `None`, fail with it otherwise.
    pub fn from_witness(name: impl Into<String>, cases: u64, witness: Option<String>) -> Self {
        match witness {
            None => Check::pass(name, cases),
            Some(w) => Check::fail(name, cases, w),
        }
    }
}

/// A list of named checks; passes iff every check passes.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn extend(&mut self, other: SuiteReport) {
        self.checks.extend(other.checks);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Tracks the first counterexample while counting cases.
#[derive(Debug, Default)]
pub(crate) struct Tally {
    pub cases: u64,
    pub witness: Option<String>,
}

impl Tally {
    pub fn record(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok && self.witness.is_none() {
            self.witness = Some(witness());
        }
    }

    pub fn merge(mut self, other: Tally) -> Tally {
        self.cases += other.cases;
        if self.witness.is_none() {
            self.witness = other.witness;
        }
        self
    }

    pub fn into_check(self, name: &str) -> Check {
        Check::from_witness(name, self.cases, self.witness)
    }
}
