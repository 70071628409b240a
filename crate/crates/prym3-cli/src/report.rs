//! Machine-readable verification reports: one flat key/value record per
//! check so that runs can be diffed.

use std::fmt::Write as _;

#[derive(Debug, Clone)]
pub struct CheckRecord {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone)]
pub struct VerificationReport {
    pub input_digest: String,
    pub seed: Option<u64>,
    pub checks: Vec<CheckRecord>,
}

impl VerificationReport {
    pub fn new(input_digest: String) -> Self {
        VerificationReport {
            input_digest,
            seed: None,
            checks: Vec::new(),
        }
    }

    pub fn push(&mut self, name: &'static str, passed: bool, detail: impl Into<String>) {
        debug_assert!(
            self.checks.iter().all(|c| c.name != name),
            "check names must be unique"
        );
        self.checks.push(CheckRecord {
            name,
            passed,
            detail: detail.into(),
        });
    }

    pub fn overall(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        writeln!(out, "input_digest={}", self.input_digest).unwrap();
        if let Some(seed) = self.seed {
            writeln!(out, "seed={seed}").unwrap();
        }
        for c in &self.checks {
            writeln!(
                out,
                "check={} status={} detail={}",
                c.name,
                if c.passed { "pass" } else { "fail" },
                c.detail.replace('\n', " ")
            )
            .unwrap();
        }
        writeln!(
            out,
            "overall={}",
            if self.overall() { "pass" } else { "fail" }
        )
        .unwrap();
        out
    }
}
