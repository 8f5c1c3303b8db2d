use serde::{Deserialize, Serialize};

use crate::fiber::{FiberClassification, Provenance};

/// One exact identity `lhs = rhs`; `ok` is `lhs == rhs`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Identity {
    pub id: String,
    pub lhs: String,
    pub rhs: String,
    pub ok: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub skipped: Option<String>,
}

impl Identity {
    pub fn new(id: impl Into<String>, lhs: impl ToString, rhs: impl ToString) -> Self {
        let (lhs, rhs) = (lhs.to_string(), rhs.to_string());
        Identity { id: id.into(), ok: lhs == rhs, lhs, rhs, skipped: None }
    }

    pub fn skip(id: impl Into<String>, reason: impl Into<String>) -> Self {
        Identity { id: id.into(), lhs: String::new(), rhs: String::new(), ok: true, skipped: Some(reason.into()) }
    }

    pub fn failed(&self) -> bool {
        self.skipped.is_none() && !self.ok
    }
}

/// A predicted flag against the directly computed one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremCheck {
    pub id: String,
    pub predicted: Option<bool>,
    pub direct: Option<bool>,
    pub ok: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub skipped: Option<String>,
}

impl TheoremCheck {
    pub fn new(id: impl Into<String>, predicted: bool, direct: bool) -> Self {
        TheoremCheck { id: id.into(), predicted: Some(predicted), direct: Some(direct), ok: predicted == direct, skipped: None }
    }

    pub fn skip(id: impl Into<String>, reason: impl Into<String>) -> Self {
        TheoremCheck { id: id.into(), predicted: None, direct: None, ok: true, skipped: Some(reason.into()) }
    }

    pub fn failed(&self) -> bool {
        self.skipped.is_none() && !self.ok
    }
}

/// A recorded fact that is not pass/fail, e.g. which of two competing
/// formulas matches.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Observation {
    pub id: String,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WindowInfo {
    #[serde(rename = "N")]
    pub bound: i64,
    #[serde(rename = "D")]
    pub neg_offset: i64,
    pub stable: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CanonicalInfo {
    pub provenance: Provenance,
    pub fallback: bool,
    pub probes: usize,
    pub battery_passed: bool,
    pub negative_controls: usize,
    pub negative_controls_rejected: usize,
}

/// Everything checked on one ordered pair.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremReport {
    pub pair: [Vec<u32>; 2],
    pub identities: Vec<Identity>,
    pub theorems: Vec<TheoremCheck>,
    pub observations: Vec<Observation>,
    pub window: WindowInfo,
    pub seed: u64,
    pub timings: Option<serde_json::Value>,
    pub canonical: Option<CanonicalInfo>,
    pub fiber: Option<FiberClassification>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl TheoremReport {
    pub fn checks(&self) -> usize {
        self.identities.iter().filter(|i| i.skipped.is_none()).count()
            + self.theorems.iter().filter(|t| t.skipped.is_none()).count()
    }

    pub fn skipped(&self) -> usize {
        self.identities.iter().filter(|i| i.skipped.is_some()).count()
            + self.theorems.iter().filter(|t| t.skipped.is_some()).count()
    }

    pub fn failures(&self) -> usize {
        self.identities.iter().filter(|i| i.failed()).count()
            + self.theorems.iter().filter(|t| t.failed()).count()
            + usize::from(self.error.is_some())
            + usize::from(!self.window.stable)
    }

    pub fn passed(&self) -> bool {
        self.failures() == 0
    }

    pub fn identity(&self, id: &str) -> Option<&Identity> {
        self.identities.iter().find(|i| i.id == id)
    }

    pub fn theorem(&self, id: &str) -> Option<&TheoremCheck> {
        self.theorems.iter().find(|t| t.id == id)
    }

    pub fn observation(&self, id: &str) -> Option<bool> {
        self.observations.iter().find(|o| o.id == id).map(|o| o.holds)
    }
}
