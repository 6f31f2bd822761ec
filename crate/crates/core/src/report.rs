use std::fmt::Write;

/// Outcome of one named verification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub id: String,
    pub description: String,
    /// `None` on success, otherwise a counterexample or reason.
    pub failure: Option<String>,
}

impl Check {
    pub fn pass(id: &str, description: impl Into<String>) -> Self {
        Check {
            id: id.into(),
            description: description.into(),
            failure: None,
        }
    }

    pub fn fail(id: &str, description: impl Into<String>, why: impl Into<String>) -> Self {
        Check {
            id: id.into(),
            description: description.into(),
            failure: Some(why.into()),
        }
    }

    /// Passes iff `failure` is `None`.
    pub fn from_outcome(id: &str, description: impl Into<String>, failure: Option<String>) -> Self {
        Check {
            id: id.into(),
            description: description.into(),
            failure,
        }
    }

    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }

    pub fn status(&self) -> &'static str {
        if self.passed() {
            "PASS"
        } else {
            "FAIL"
        }
    }
}

/// A list of checks, printed one line each followed by a summary block.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn get(&self, id: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.id == id)
    }

    /// ```text
    /// PASS unit-iso: ...
    /// FAIL triangular: ... -- counterexample
    ///
    /// [summary]
    /// unit-iso=PASS
    /// triangular=FAIL
    /// ```
    pub fn render(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            write!(out, "{} {}: {}", c.status(), c.id, c.description).unwrap();
            if let Some(why) = &c.failure {
                write!(out, " -- {why}").unwrap();
            }
            out.push('\n');
        }
        out.push_str("\n[summary]\n");
        for c in &self.checks {
            writeln!(out, "{}={}", c.id, c.status()).unwrap();
        }
        out
    }
}
