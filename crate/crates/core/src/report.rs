//! Named pass/fail checks with witnesses.

use crate::exactla::Scalar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub witness: Option<String>,
}

impl Check {
    pub fn ok(name: impl Into<String>) -> Check {
        Check { name: name.into(), pass: true, witness: None }
    }

    pub fn fail(name: impl Into<String>, witness: impl Into<String>) -> Check {
        Check { name: name.into(), pass: false, witness: Some(witness.into()) }
    }

    /// Passing check, or a failure whose witness is produced lazily.
    pub fn when(name: impl Into<String>, pass: bool, witness: impl FnOnce() -> String) -> Check {
        if pass {
            Check::ok(name)
        } else {
            Check::fail(name, witness())
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub checks: Vec<Check>,
    pub notes: Vec<String>,
}

impl Report {
    pub fn new() -> Report {
        Report::default()
    }

    pub fn push(&mut self, c: Check) {
        self.checks.push(c);
    }

    pub fn note(&mut self, n: impl Into<String>) {
        self.notes.push(n.into());
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
        self.notes.extend(other.notes);
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.pass).collect()
    }
}

pub fn fmt_vec(v: &[Scalar]) -> String {
    let parts: Vec<String> = v.iter().map(Scalar::to_literal).collect();
    format!("[{}]", parts.join(","))
}
