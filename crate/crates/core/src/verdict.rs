//! Check outcomes with replayable witnesses.

use crate::dense::SubgroupHandle;
use crate::perm::Permutation;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VerdictStatus {
    Verified,
    Counterexample,
    Skipped,
}

/// Everything needed to replay a finding: the element and/or tuple involved,
/// and any subgroups as index lists tied to their parent's table hash.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub element: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tuple: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub subgroups: Option<Vec<SubgroupWitness>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubgroupWitness {
    pub parent_hash: String,
    pub indices: Vec<usize>,
}

impl Witness {
    pub fn element(p: &Permutation) -> Witness {
        Witness {
            element: Some(p.images().to_vec()),
            ..Witness::default()
        }
    }

    pub fn with_tuple(mut self, tuple: &[usize]) -> Witness {
        self.tuple = Some(tuple.to_vec());
        self
    }

    pub fn with_subgroup(mut self, h: &SubgroupHandle) -> Witness {
        let (parent_hash, indices) = h.witness_indices();
        self.subgroups
            .get_or_insert_with(Vec::new)
            .push(SubgroupWitness {
                parent_hash,
                indices,
            });
        self
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Witness {
        self.detail = Some(detail.into());
        self
    }
}

/// Outcome of one named check on one group.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ConjectureVerdict {
    pub check: String,
    pub status: VerdictStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    #[serde(default, skip_serializing_if = "serde_json::Value::is_null")]
    pub payload: serde_json::Value,
    pub elapsed_ms: u64,
}

impl ConjectureVerdict {
    pub fn verified(check: impl Into<String>) -> ConjectureVerdict {
        ConjectureVerdict {
            check: check.into(),
            status: VerdictStatus::Verified,
            witness: None,
            reason: None,
            payload: serde_json::Value::Null,
            elapsed_ms: 0,
        }
    }

    pub fn counterexample(check: impl Into<String>, witness: Witness) -> ConjectureVerdict {
        ConjectureVerdict {
            check: check.into(),
            status: VerdictStatus::Counterexample,
            witness: Some(witness),
            reason: None,
            payload: serde_json::Value::Null,
            elapsed_ms: 0,
        }
    }

    pub fn skipped(check: impl Into<String>, reason: impl Into<String>) -> ConjectureVerdict {
        ConjectureVerdict {
            check: check.into(),
            status: VerdictStatus::Skipped,
            witness: None,
            reason: Some(reason.into()),
            payload: serde_json::Value::Null,
            elapsed_ms: 0,
        }
    }

    pub fn with_witness(mut self, witness: Witness) -> ConjectureVerdict {
        self.witness = Some(witness);
        self
    }

    pub fn with_payload(mut self, payload: serde_json::Value) -> ConjectureVerdict {
        self.payload = payload;
        self
    }

    pub fn is_verified(&self) -> bool {
        self.status == VerdictStatus::Verified
    }

    pub fn is_counterexample(&self) -> bool {
        self.status == VerdictStatus::Counterexample
    }
}
