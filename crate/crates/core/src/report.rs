//! Machine-readable verification reports.
//!
//! Reports serialize with sorted keys and a trailing newline so that equal
//! inputs give byte-identical files.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Finding,
    Inconclusive,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Finding => "finding",
            Status::Inconclusive => "inconclusive",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub claim_id: String,
    pub status: Status,
    pub counts: BTreeMap<String, u64>,
    pub witnesses: Vec<Value>,
    pub notes: Vec<String>,
    pub seed: u64,
    pub config_echo: Value,
}

impl VerificationReport {
    pub fn new(claim_id: impl Into<String>, seed: u64) -> Self {
        VerificationReport {
            claim_id: claim_id.into(),
            status: Status::Pass,
            counts: BTreeMap::new(),
            witnesses: Vec::new(),
            notes: Vec::new(),
            seed,
            config_echo: Value::Null,
        }
    }

    pub fn count(&mut self, key: &str, value: u64) {
        self.counts.insert(key.to_string(), value);
    }

    pub fn get(&self, key: &str) -> u64 {
        self.counts.get(key).copied().unwrap_or(0)
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    /// Records a contract failure. A failing report always carries a witness.
    pub fn fail(&mut self, witness: Value) {
        self.status = Status::Fail;
        self.witnesses.push(witness);
    }

    pub fn is_fail(&self) -> bool {
        self.status == Status::Fail
    }

    /// Pretty JSON, keys sorted, newline-terminated.
    pub fn to_json_string(&self) -> String {
        let value = serde_json::to_value(self).expect("report is always serializable");
        let mut out = serde_json::to_string_pretty(&value).expect("value is always serializable");
        out.push('\n');
        out
    }

    /// Merges several reports into one bundle: counts are prefixed by each
    /// sub-report's claim id and the worst status wins.
    pub fn bundle(claim_id: &str, seed: u64, parts: Vec<VerificationReport>) -> Self {
        let mut out = VerificationReport::new(claim_id, seed);
        for part in parts {
            for (k, v) in &part.counts {
                out.counts.insert(format!("{}.{}", part.claim_id, k), *v);
            }
            for w in part.witnesses {
                out.witnesses.push(serde_json::json!({ "claim_id": part.claim_id, "witness": w }));
            }
            for n in part.notes {
                out.notes.push(format!("{}: {}", part.claim_id, n));
            }
            out.status = worst(out.status, part.status);
        }
        out
    }
}

fn severity(s: Status) -> u8 {
    match s {
        Status::Pass => 0,
        Status::Inconclusive => 1,
        Status::Finding => 2,
        Status::Fail => 3,
    }
}

pub fn worst(a: Status, b: Status) -> Status {
    if severity(b) > severity(a) {
        b
    } else {
        a
    }
}
