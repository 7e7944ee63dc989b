//! Verification reports and their text and JSON renderings.

use std::fmt::Write as _;

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

impl Status {
    fn tag(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skip => "SKIP",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub group: String,
    pub name: String,
    pub status: Status,
    pub detail: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub witnesses: Vec<String>,
    /// The skip was caused by a size cap rather than missing input.
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub resource_skip: bool,
}

impl CheckResult {
    pub fn new(group: &str, name: &str, passed: bool, detail: impl Into<String>) -> CheckResult {
        CheckResult {
            group: group.to_string(),
            name: format!("{group}.{name}"),
            status: if passed { Status::Pass } else { Status::Fail },
            detail: detail.into(),
            witnesses: Vec::new(),
            resource_skip: false,
        }
    }

    pub fn skip(group: &str, name: &str, reason: impl Into<String>, resource: bool) -> CheckResult {
        CheckResult {
            group: group.to_string(),
            name: format!("{group}.{name}"),
            status: Status::Skip,
            detail: reason.into(),
            witnesses: Vec::new(),
            resource_skip: resource,
        }
    }

    pub fn with_witnesses(mut self, witnesses: impl IntoIterator<Item = String>) -> CheckResult {
        self.witnesses.extend(witnesses);
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub config: String,
    pub backend: String,
    pub seed: u64,
    pub depth: u32,
    pub cells: usize,
    pub points: usize,
    pub checks: Vec<CheckResult>,
}

impl Report {
    pub fn count(&self, status: Status) -> usize {
        self.checks.iter().filter(|c| c.status == status).count()
    }

    pub fn any_failed(&self) -> bool {
        self.count(Status::Fail) > 0
    }

    pub fn any_resource_skip(&self) -> bool {
        self.checks.iter().any(|c| c.resource_skip)
    }

    /// `0` all pass, `1` any failure, `3` a size-cap skip under `strict`.
    pub fn exit_code(&self, strict: bool) -> i32 {
        if self.any_failed() {
            1
        } else if strict && self.any_resource_skip() {
            3
        } else {
            0
        }
    }

    pub fn find(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "noise-lab verification report");
        let _ = writeln!(out, "config:  {}", self.config);
        let _ = writeln!(
            out,
            "backend: {}  seed: {}  depth: {}  cells: {}  points: {}",
            self.backend, self.seed, self.depth, self.cells, self.points
        );
        let width = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
        let mut group = "";
        for c in &self.checks {
            if c.group != group {
                group = &c.group;
                let _ = writeln!(out, "\n[{group}]");
            }
            let _ = writeln!(out, "  {}  {:width$}  {}", c.status.tag(), c.name, c.detail);
            for w in &c.witnesses {
                let _ = writeln!(out, "        {w}");
            }
        }
        let _ = writeln!(
            out,
            "\nsummary: {} pass, {} fail, {} skip",
            self.count(Status::Pass),
            self.count(Status::Fail),
            self.count(Status::Skip)
        );
        out
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn report(checks: Vec<CheckResult>) -> Report {
        Report {
            config: "x.json".into(),
            backend: "exact".into(),
            seed: 0,
            depth: 4,
            cells: 1,
            points: 2,
            checks,
        }
    }

    #[test]
    fn exit_codes() {
        let ok = CheckResult::new("laws", "a", true, "");
        let bad = CheckResult::new("laws", "b", false, "");
        let capped = CheckResult::skip("chaos", "c", "too big", true);
        let missing = CheckResult::skip("geometry", "d", "no embedding", false);
        assert_eq!(report(vec![ok.clone(), missing.clone()]).exit_code(true), 0);
        assert_eq!(report(vec![ok.clone(), capped.clone()]).exit_code(false), 0);
        assert_eq!(report(vec![ok.clone(), capped.clone()]).exit_code(true), 3);
        assert_eq!(report(vec![bad, capped]).exit_code(true), 1);
    }

    #[test]
    fn text_rendering() {
        let r = report(vec![
            CheckResult::new("laws", "a", true, "fine"),
            CheckResult::new("laws", "bb", false, "broken").with_witnesses(["at x".to_string()]),
        ]);
        let text = r.to_text();
        assert!(text.contains("  PASS  laws.a   fine\n"));
        assert!(text.contains("  FAIL  laws.bb  broken\n        at x\n"));
        assert!(text.ends_with("summary: 1 pass, 1 fail, 0 skip\n"));
    }
}
