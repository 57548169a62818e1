use std::path::Path;

use h4geproci::Check;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Indeterminate,
    Fail,
}

impl Status {
    pub fn exit_code(self) -> u8 {
        match self {
            Status::Pass => 0,
            Status::Fail | Status::Indeterminate => 1,
        }
    }

    pub fn worst(self, other: Status) -> Status {
        self.max(other)
    }
}

/// One entry of the pass/fail ledger.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LedgerEntry {
    #[serde(flatten)]
    pub check: Check,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub detail: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunReport {
    pub command: String,
    pub seeds: Vec<u64>,
    pub wall_time_ms: u64,
    pub status: Status,
    pub checks: Vec<LedgerEntry>,
    pub artifacts: Vec<String>,
}

/// Collects checks while a command runs.
#[derive(Debug, Default)]
pub struct Ledger {
    pub entries: Vec<LedgerEntry>,
    pub status: Option<Status>,
}

impl Ledger {
    pub fn check(
        &mut self,
        name: &str,
        claim: &str,
        passed: bool,
        seed: Option<u64>,
        detail: Option<String>,
    ) {
        self.push(LedgerEntry {
            check: Check::new(name, claim, passed),
            seed,
            detail,
        });
    }

    pub fn push(&mut self, entry: LedgerEntry) {
        let s = if entry.check.passed {
            Status::Pass
        } else {
            Status::Fail
        };
        self.entries.push(entry);
        self.mark(s);
    }

    pub fn extend(&mut self, checks: &[Check], seed: Option<u64>) {
        for c in checks {
            self.push(LedgerEntry {
                check: c.clone(),
                seed,
                detail: None,
            });
        }
    }

    pub fn mark(&mut self, s: Status) {
        self.status = Some(self.status.map_or(s, |t| t.worst(s)));
    }

    pub fn status(&self) -> Status {
        self.status.unwrap_or(Status::Pass)
    }

    pub fn print(&self) {
        for e in &self.entries {
            let tag = if e.check.passed { "PASS" } else { "FAIL" };
            let seed = e.seed.map(|s| format!(" [seed {s}]")).unwrap_or_default();
            let detail = e
                .detail
                .as_deref()
                .map(|d| format!(" ({d})"))
                .unwrap_or_default();
            println!("{tag} {}{seed}: {}{detail}", e.check.name, e.check.claim);
        }
    }
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> std::io::Result<()> {
    let mut text = serde_json::to_string_pretty(value).map_err(std::io::Error::other)?;
    text.push('\n');
    std::fs::write(path, text)
}
