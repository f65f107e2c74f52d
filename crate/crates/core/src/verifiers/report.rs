use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    InconclusiveBounded,
    Fail,
}

impl Verdict {
    /// The worse of the two: fail over inconclusive over pass.
    pub fn and(self, other: Verdict) -> Verdict {
        self.max(other)
    }

    pub fn from_bool(ok: bool) -> Verdict {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::InconclusiveBounded => "inconclusive-bounded",
            Verdict::Fail => "fail",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub verdict: Verdict,
    pub detail: Value,
}

/// Outcome of one verifier run; a failing check always carries its counterexample
/// in `detail`.
#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub claim: String,
    pub parameters: BTreeMap<String, Value>,
    pub verdict: Verdict,
    pub checks: Vec<Check>,
    pub evidence: BTreeMap<String, Value>,
}

impl VerificationReport {
    pub fn new(claim: &str) -> Self {
        VerificationReport {
            claim: claim.to_string(),
            parameters: BTreeMap::new(),
            verdict: Verdict::Pass,
            checks: Vec::new(),
            evidence: BTreeMap::new(),
        }
    }

    pub fn param(mut self, key: &str, value: impl Serialize) -> Self {
        self.parameters.insert(key.into(), to_value(value));
        self
    }

    pub fn evidence(&mut self, key: &str, value: impl Serialize) {
        self.evidence.insert(key.into(), to_value(value));
    }

    pub fn check(&mut self, name: impl Into<String>, verdict: Verdict, detail: impl Serialize) {
        self.verdict = self.verdict.and(verdict);
        self.checks.push(Check {
            name: name.into(),
            verdict,
            detail: to_value(detail),
        });
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.verdict == Verdict::Fail)
    }
}

fn to_value(v: impl Serialize) -> Value {
    serde_json::to_value(v).unwrap_or(Value::Null)
}
