//! Check reports shared by every validator.

use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Valid,
    Invalid,
    Error,
    Vacuous,
}

impl Status {
    /// Process exit code for this status.
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Valid | Status::Vacuous => 0,
            Status::Invalid => 1,
            Status::Error => 2,
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Valid => "valid",
            Status::Invalid => "invalid",
            Status::Error => "error",
            Status::Vacuous => "vacuous",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    /// Item could not be evaluated (outside the battery or window).
    Untestable,
    Note,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportItem {
    pub check: String,
    pub location: String,
    pub verdict: Verdict,
    pub detail: String,
}

impl ReportItem {
    pub fn new(check: impl Into<String>, location: impl Into<String>, verdict: Verdict, detail: impl Into<String>) -> Self {
        Self { check: check.into(), location: location.into(), verdict, detail: detail.into() }
    }

    pub fn pass(check: impl Into<String>, location: impl Into<String>, detail: impl Into<String>) -> Self {
        Self::new(check, location, Verdict::Pass, detail)
    }

    pub fn fail(check: impl Into<String>, location: impl Into<String>, detail: impl Into<String>) -> Self {
        Self::new(check, location, Verdict::Fail, detail)
    }

    pub fn note(check: impl Into<String>, location: impl Into<String>, detail: impl Into<String>) -> Self {
        Self::new(check, location, Verdict::Note, detail)
    }

    pub fn untestable(check: impl Into<String>, location: impl Into<String>, detail: impl Into<String>) -> Self {
        Self::new(check, location, Verdict::Untestable, detail)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub status: Status,
    pub items: Vec<ReportItem>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub timing_ms: Option<u64>,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Self { command: command.into(), status: Status::Vacuous, items: vec![], timing_ms: None }
    }

    pub fn error(command: impl Into<String>, message: impl Into<String>) -> Self {
        let mut r = Self::new(command);
        r.items.push(ReportItem::new("error", "", Verdict::Fail, message));
        r.status = Status::Error;
        r
    }

    pub fn push(&mut self, item: ReportItem) {
        self.items.push(item);
    }

    pub fn extend(&mut self, items: impl IntoIterator<Item = ReportItem>) {
        self.items.extend(items);
    }

    /// Appends another report's items, prefixing their check ids.
    pub fn absorb(&mut self, prefix: &str, other: Report) {
        for mut item in other.items {
            if !prefix.is_empty() {
                item.check = format!("{prefix}/{}", item.check);
            }
            self.items.push(item);
        }
    }

    /// Recomputes the status from the items: invalid iff some item fails,
    /// vacuous iff nothing passed or failed.
    pub fn finish(mut self) -> Self {
        if self.status == Status::Error {
            return self;
        }
        self.status = if self.items.iter().any(|i| i.verdict == Verdict::Fail) {
            Status::Invalid
        } else if self.items.iter().any(|i| i.verdict == Verdict::Pass) {
            Status::Valid
        } else {
            Status::Vacuous
        };
        self
    }

    pub fn is_valid(&self) -> bool {
        matches!(self.status, Status::Valid | Status::Vacuous)
    }

    pub fn failures(&self) -> impl Iterator<Item = &ReportItem> {
        self.items.iter().filter(|i| i.verdict == Verdict::Fail)
    }

    pub fn failed_checks(&self) -> std::collections::BTreeSet<String> {
        self.failures().map(|i| i.check.clone()).collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}: {}", self.command, self.status)?;
        for item in &self.items {
            let tag = match item.verdict {
                Verdict::Pass => "PASS",
                Verdict::Fail => "FAIL",
                Verdict::Untestable => "SKIP",
                Verdict::Note => "NOTE",
            };
            write!(f, "  [{tag}] {}", item.check)?;
            if !item.location.is_empty() {
                write!(f, " @ {}", item.location)?;
            }
            if !item.detail.is_empty() {
                write!(f, ": {}", item.detail)?;
            }
            writeln!(f)?;
        }
        if let Some(ms) = self.timing_ms {
            writeln!(f, "  ({ms} ms)")?;
        }
        Ok(())
    }
}
