//! Pass/fail reports shared by every validator and the CLI.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

/// Version tag written into every serialized report.
pub const REPORT_SCHEMA: &str = "symtrack-report/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
}

/// One named check. A failing check always carries a witness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub status: CheckStatus,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<String>,
}

impl Check {
    pub fn pass(name: impl Into<String>) -> Self {
        Self { name: name.into(), status: CheckStatus::Pass, witness: None }
    }

    pub fn fail(name: impl Into<String>, witness: impl Into<String>) -> Self {
        Self { name: name.into(), status: CheckStatus::Fail, witness: Some(witness.into()) }
    }

    /// Pass, with an informational note attached.
    pub fn pass_with(name: impl Into<String>, note: impl Into<String>) -> Self {
        Self { name: name.into(), status: CheckStatus::Pass, witness: Some(note.into()) }
    }

    pub fn from_result(name: impl Into<String>, r: Result<(), String>) -> Self {
        match r {
            Ok(()) => Self::pass(name),
            Err(w) => Self::fail(name, w),
        }
    }

    /// Passes when every case is `Ok`; otherwise carries the first failure.
    pub fn all(name: impl Into<String>, cases: impl IntoIterator<Item = Result<(), String>>) -> Self {
        let r = cases.into_iter().find(|c| c.is_err()).unwrap_or(Ok(()));
        Self::from_result(name, r)
    }

    pub fn passed(&self) -> bool {
        self.status == CheckStatus::Pass
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.status {
            CheckStatus::Pass => "PASS",
            CheckStatus::Fail => "FAIL",
        };
        write!(f, "{tag}  {}", self.name)?;
        if let Some(w) = &self.witness {
            write!(f, "  [{w}]")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    pub command: String,
    pub inputs: BTreeMap<String, String>,
    pub checks: Vec<Check>,
    /// One-line human summary, when the command has a natural headline.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub summary: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub timing_ms: Option<f64>,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Self {
            schema: REPORT_SCHEMA.to_string(),
            command: command.into(),
            inputs: BTreeMap::new(),
            checks: Vec::new(),
            summary: None,
            timing_ms: None,
        }
    }

    pub fn input(mut self, key: impl Into<String>, value: impl ToString) -> Self {
        self.inputs.insert(key.into(), value.to_string());
        self
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn extend(&mut self, checks: impl IntoIterator<Item = Check>) {
        self.checks.extend(checks);
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.passed())
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed())
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{c}")?;
        }
        Ok(())
    }
}
