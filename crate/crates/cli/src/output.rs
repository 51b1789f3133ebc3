use std::collections::BTreeMap;
use std::fmt::Write as _;

use clap::ValueEnum;
use seedcheck::{Error, Verdict, VerificationReport};
use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

/// What a run prints on standard output. Key order is fixed by field order;
/// maps inside are sorted.
#[derive(Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub input_digest: String,
    pub verdict: Verdict,
    pub counts: BTreeMap<String, u64>,
    pub violations: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub sections: Vec<VerificationReport>,
    #[serde(skip_serializing_if = "Value::is_null")]
    pub result: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

impl Report {
    pub fn new(command: String, input_digest: String) -> Self {
        Report {
            command,
            input_digest,
            verdict: Verdict::Pass,
            counts: BTreeMap::new(),
            violations: Vec::new(),
            sections: Vec::new(),
            result: Value::Null,
            timing_ms: None,
        }
    }

    /// Appends a check, prefixing its violations with the check name.
    pub fn push_section(&mut self, section: VerificationReport) {
        self.verdict = self.verdict.combine(section.verdict);
        self.violations.extend(
            section
                .violations
                .iter()
                .map(|v| format!("{}: {v}", section.check)),
        );
        self.sections.push(section);
    }

    pub fn exit_code(&self) -> u8 {
        match self.verdict {
            Verdict::Pass => 0,
            Verdict::Fail => 1,
            Verdict::InconclusiveTruncated => 3,
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("report serializes");
                s.push('\n');
                s
            }
            Format::Text => self.render_text(),
        }
    }

    fn render_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "command: {}", self.command);
        let _ = writeln!(s, "input:   {}", self.input_digest);
        let _ = writeln!(s, "verdict: {}", self.verdict);
        let _ = writeln!(s, "counts:  {}", join_counts(&self.counts));
        for section in &self.sections {
            let _ = writeln!(
                s,
                "  {:<24} {:<24} {}",
                section.check,
                section.verdict.to_string(),
                join_counts(&section.counts)
            );
        }
        if let Value::Object(map) = &self.result {
            for (key, value) in map {
                match value {
                    Value::Array(items) if items.iter().any(|i| !i.is_number()) => {
                        let _ = writeln!(s, "{key}:");
                        for item in items {
                            let _ = writeln!(s, "  {}", compact(item));
                        }
                    }
                    other => {
                        let _ = writeln!(s, "{key}: {}", compact(other));
                    }
                }
            }
        }
        if self.violations.is_empty() {
            let _ = writeln!(s, "violations: none");
        } else {
            let _ = writeln!(s, "violations: {}", self.violations.len());
            for v in &self.violations {
                let _ = writeln!(s, "  - {v}");
            }
        }
        if let Some(ms) = self.timing_ms {
            let _ = writeln!(s, "time: {ms} ms");
        }
        s
    }
}

fn join_counts(counts: &BTreeMap<String, u64>) -> String {
    counts
        .iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect::<Vec<_>>()
        .join(" ")
}

fn compact(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// A run that ended without a report.
#[derive(Debug)]
pub struct Outcome {
    pub code: u8,
    pub message: String,
}

impl From<Error> for Outcome {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::Resource(_) => 3,
            Error::Division(_) | Error::Invariant(_) => 1,
            _ => 2,
        };
        Outcome {
            code,
            message: e.to_string(),
        }
    }
}

impl Outcome {
    pub fn usage(message: impl Into<String>) -> Self {
        Outcome {
            code: 2,
            message: message.into(),
        }
    }
}
