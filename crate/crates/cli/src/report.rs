//! The machine-readable report written by every command.

use serde::{Deserialize, Serialize};
use serde_json::Value;

pub const SCHEMA: &str = "qharm-report/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// Reported for information; does not affect the exit code.
    Info,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Counterexample {
    pub input: String,
    pub expected: String,
    pub actual: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub detail: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
}

impl Check {
    pub fn new(name: impl Into<String>, ok: bool, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            status: if ok { Status::Pass } else { Status::Fail },
            detail: detail.into(),
            counterexample: None,
        }
    }

    pub fn info(name: impl Into<String>, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            status: Status::Info,
            detail: detail.into(),
            counterexample: None,
        }
    }

    pub fn with_counterexample(mut self, c: Counterexample) -> Self {
        self.counterexample = Some(c);
        self
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub passed: usize,
    pub failed: usize,
    pub info: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Timing {
    pub elapsed_ms: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    /// The arguments the command was invoked with.
    pub command: Vec<String>,
    pub checks: Vec<Check>,
    pub summary: Summary,
    pub result: Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing: Option<Timing>,
}

impl Report {
    pub fn new(command: Vec<String>, checks: Vec<Check>, result: Value) -> Self {
        let mut summary = Summary::default();
        for c in &checks {
            match c.status {
                Status::Pass => summary.passed += 1,
                Status::Fail => summary.failed += 1,
                Status::Info => summary.info += 1,
            }
        }
        Report {
            schema: SCHEMA.to_string(),
            command,
            checks,
            summary,
            result,
            timing: None,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn summary_counts() {
        let checks = vec![
            Check::new("a", true, ""),
            Check::new("b", false, "x"),
            Check::info("c", "y"),
        ];
        let r = Report::new(vec![], checks, Value::Null);
        assert_eq!(
            (r.summary.passed, r.summary.failed, r.summary.info),
            (1, 1, 1)
        );
        assert!(!r.all_passed());
        assert!(Report::new(vec![], vec![Check::info("c", "")], Value::Null).all_passed());
    }

    #[test]
    fn status_is_lowercase() {
        assert_eq!(serde_json::to_string(&Status::Fail).unwrap(), "\"fail\"");
    }
}
