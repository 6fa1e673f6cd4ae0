//! Run reports: a command echo, canonical inputs and outputs, and a list of
//! named checks.
//!
//! The JSON form is byte-identical for identical inputs and seed; wall time
//! appears only in the human text rendering. A theorem violation is a
//! distinguished status with its own exit code, never an ordinary failure.

use std::fmt::Write as _;
use std::time::Duration;

use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckStatus {
    Pass,
    Fail,
    TheoremViolation,
    ExpectedFail,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub status: CheckStatus,
    pub detail: String,
}

impl Check {
    pub fn pass(name: impl Into<String>, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            status: CheckStatus::Pass,
            detail: detail.into(),
        }
    }

    pub fn fail(name: impl Into<String>, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            status: CheckStatus::Fail,
            detail: detail.into(),
        }
    }

    pub fn expected_fail(name: impl Into<String>, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            status: CheckStatus::ExpectedFail,
            detail: detail.into(),
        }
    }

    /// Pass, or an ordinary failure.
    pub fn of(name: impl Into<String>, ok: bool, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            status: if ok { CheckStatus::Pass } else { CheckStatus::Fail },
            detail: detail.into(),
        }
    }

    /// Pass, or a theorem violation: the check asserts a proved identity, so
    /// a mismatch means mathematics broke, not just the run.
    pub fn theorem(name: impl Into<String>, ok: bool, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            status: if ok {
                CheckStatus::Pass
            } else {
                CheckStatus::TheoremViolation
            },
            detail: detail.into(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    pub inputs: Value,
    pub outputs: Value,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    /// Human-oriented lines for the text rendering; derived from the same
    /// data as `outputs`, so skipping them keeps the JSON canonical.
    #[serde(skip)]
    pub summary: Vec<String>,
}

impl RunReport {
    pub fn passed(&self) -> bool {
        self.checks
            .iter()
            .all(|c| matches!(c.status, CheckStatus::Pass | CheckStatus::ExpectedFail))
    }

    /// 0 all pass, 1 ordinary check failure, 3 theorem violation.
    pub fn exit_code(&self) -> i32 {
        if self
            .checks
            .iter()
            .any(|c| c.status == CheckStatus::TheoremViolation)
        {
            3
        } else if self.checks.iter().any(|c| c.status == CheckStatus::Fail) {
            1
        } else {
            0
        }
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn render_text(&self, wall: Duration) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "yangian {}", self.command);
        if let Some(seed) = self.seed {
            let _ = writeln!(out, "  seed: {}", seed);
        }
        for line in &self.summary {
            let _ = writeln!(out, "  {}", line);
        }
        if !self.checks.is_empty() {
            let _ = writeln!(out, "checks:");
            for c in &self.checks {
                let tag = match c.status {
                    CheckStatus::Pass => "pass",
                    CheckStatus::Fail => "FAIL",
                    CheckStatus::TheoremViolation => "THEOREM VIOLATION",
                    CheckStatus::ExpectedFail => "expected-fail",
                };
                let _ = writeln!(out, "  [{}] {}: {}", tag, c.name, c.detail);
            }
        }
        let passed = self
            .checks
            .iter()
            .filter(|c| matches!(c.status, CheckStatus::Pass | CheckStatus::ExpectedFail))
            .count();
        let verdict = if self.passed() { "ok" } else { "FAILED" };
        let _ = writeln!(
            out,
            "result: {} ({} of {} checks) in {} ms",
            verdict,
            passed,
            self.checks.len(),
            wall.as_millis()
        );
        out
    }
}
