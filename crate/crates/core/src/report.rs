use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Verdict {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "INCONCLUSIVE-TRUNCATED")]
    InconclusiveTruncated,
    #[serde(rename = "FAIL")]
    Fail,
}

impl Verdict {
    /// Combines verdicts of independent checks: any failure wins, then truncation.
    pub fn combine(self, other: Verdict) -> Verdict {
        self.max(other)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::InconclusiveTruncated => "INCONCLUSIVE-TRUNCATED",
        })
    }
}

/// Outcome of one verification pass over a mutation graph.
///
/// `verdict` is `Fail` iff `violations` is non-empty, and
/// `InconclusiveTruncated` only when the input graph was truncated.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub check: String,
    pub verdict: Verdict,
    pub counts: BTreeMap<String, u64>,
    pub violations: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub details: Vec<serde_json::Value>,
}

impl VerificationReport {
    pub fn new(check: impl Into<String>) -> Self {
        VerificationReport {
            check: check.into(),
            verdict: Verdict::Pass,
            counts: BTreeMap::new(),
            violations: Vec::new(),
            details: Vec::new(),
        }
    }

    pub fn count(&mut self, key: &str, value: u64) -> &mut Self {
        self.counts.insert(key.to_string(), value);
        self
    }

    pub fn violation(&mut self, message: impl Into<String>) {
        self.violations.push(message.into());
    }

    /// Sorts violations and fixes the verdict.
    pub fn finish(mut self, truncated: bool) -> Self {
        self.violations.sort();
        self.verdict = if !self.violations.is_empty() {
            Verdict::Fail
        } else if truncated {
            Verdict::InconclusiveTruncated
        } else {
            Verdict::Pass
        };
        self
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verdict_rules() {
        let r = VerificationReport::new("x").finish(false);
        assert_eq!(r.verdict, Verdict::Pass);
        let r = VerificationReport::new("x").finish(true);
        assert_eq!(r.verdict, Verdict::InconclusiveTruncated);
        let mut r = VerificationReport::new("x");
        r.violation("boom");
        assert_eq!(r.finish(true).verdict, Verdict::Fail);
        assert_eq!(
            Verdict::Pass.combine(Verdict::InconclusiveTruncated),
            Verdict::InconclusiveTruncated
        );
        assert_eq!(
            Verdict::Fail.combine(Verdict::InconclusiveTruncated),
            Verdict::Fail
        );
        assert_eq!(
            serde_json::to_string(&Verdict::InconclusiveTruncated).unwrap(),
            "\"INCONCLUSIVE-TRUNCATED\""
        );
    }
}
