//! Pass/fail summaries returned by the randomized verifiers.

use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub trials: usize,
    /// Description of the first failing input, if any.
    pub witness: Option<String>,
}

impl Check {
    /// Runs `trial` up to `trials` times, stopping at the first witness.
    pub fn run(name: &str, trials: usize, mut trial: impl FnMut(usize) -> Option<String>) -> Check {
        for t in 0..trials {
            if let Some(w) = trial(t) {
                return Check { name: name.to_string(), passed: false, trials: t + 1, witness: Some(w) };
            }
        }
        Check { name: name.to_string(), passed: true, trials, witness: None }
    }

    pub fn single(name: &str, passed: bool, witness: impl FnOnce() -> String) -> Check {
        Check { name: name.to_string(), passed, trials: 1, witness: if passed { None } else { Some(witness()) } }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn push(&mut self, c: Check) {
        self.checks.push(c);
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn passed(&self, name: &str) -> bool {
        self.get(name).is_some_and(|c| c.passed)
    }
}
