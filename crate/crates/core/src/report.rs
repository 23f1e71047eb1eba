//! Named pass/fail checks with witnesses, shared by every verifier.

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
    /// A concrete counterexample whenever `passed` is false.
    pub witness: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Report {
    pub title: String,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(title: impl Into<String>) -> Self {
        Report { title: title.into(), checks: Vec::new() }
    }

    /// Records a check; the witness is only built on failure.
    pub fn check(&mut self, name: &str, passed: bool, detail: impl Into<String>, witness: impl FnOnce() -> String) {
        let witness = if passed { None } else { Some(witness()) };
        self.checks.push(Check { name: name.to_string(), passed, detail: detail.into(), witness });
    }

    /// Records a check whose first counterexample, if any, is `failure`.
    pub fn check_none(&mut self, name: &str, detail: impl Into<String>, failure: Option<String>) {
        self.checks.push(Check {
            name: name.to_string(),
            passed: failure.is_none(),
            detail: detail.into(),
            witness: failure,
        });
    }

    /// Records an observation that is not a pass/fail criterion.
    pub fn note(&mut self, name: &str, detail: impl Into<String>) {
        self.checks.push(Check { name: name.to_string(), passed: true, detail: detail.into(), witness: None });
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}
