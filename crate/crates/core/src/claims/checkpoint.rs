use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::Check;
use crate::error::{Error, Result};

/// Progress through one case of a claim.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseProgress {
    pub label: String,
    pub last_completed: i128,
    pub gaps: Vec<i128>,
}

/// Resumable state of one claim run. Cases are processed in order; all but
/// the last entry are complete.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Checkpoint {
    pub claim_id: String,
    pub parameter_hash: String,
    pub last_completed: Option<i128>,
    pub cases: Vec<CaseProgress>,
}

/// Digest of everything that determines a run's output.
pub fn parameter_hash(check: &Check, bound: i128) -> String {
    let mut h = Sha256::new();
    h.update(format!("{check:?}|{bound}").as_bytes());
    hex::encode(h.finalize())
}

impl Checkpoint {
    pub fn new(claim_id: &str, parameter_hash: String) -> Self {
        Checkpoint { claim_id: claim_id.to_string(), parameter_hash, last_completed: None, cases: Vec::new() }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("checkpoint serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::CheckpointCorrupt(e.to_string()))
    }

    /// Reads a checkpoint for `claim_id`; a missing file is a fresh start.
    pub fn load(path: &Path, claim_id: &str, parameter_hash: &str) -> Result<Option<Self>> {
        let text = match fs::read_to_string(path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(e.into()),
        };
        let cp = Self::from_json(&text)?;
        if cp.claim_id != claim_id {
            return Err(Error::CheckpointCorrupt(format!("written for `{}`, not `{claim_id}`", cp.claim_id)));
        }
        if cp.parameter_hash != parameter_hash {
            return Err(Error::CheckpointCorrupt("parameter hash does not match this run".into()));
        }
        Ok(Some(cp))
    }

    /// Writes through a temporary file so a crash never leaves half a document.
    pub fn save(&self, path: &Path) -> Result<()> {
        let tmp = path.with_extension("tmp");
        fs::write(&tmp, self.to_json())?;
        fs::rename(&tmp, path)?;
        Ok(())
    }

    /// Records that `label` is done through `n` with `gaps` found in the
    /// new stretch.
    pub fn advance(&mut self, label: &str, n: i128, gaps: &[i128]) {
        match self.cases.last_mut() {
            Some(c) if c.label == label => {
                c.last_completed = n;
                c.gaps.extend_from_slice(gaps);
            }
            _ => self.cases.push(CaseProgress { label: label.to_string(), last_completed: n, gaps: gaps.to_vec() }),
        }
        self.last_completed = Some(n);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_rejection() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cp.json");
        let hash = parameter_hash(&Check::Dickson, 100);
        let mut cp = Checkpoint::new("x", hash.clone());
        cp.advance("a", 50, &[7, 15]);
        cp.advance("a", 100, &[60]);
        cp.advance("b", 20, &[]);
        cp.save(&path).unwrap();
        let back = Checkpoint::load(&path, "x", &hash).unwrap().unwrap();
        assert_eq!(back, cp);
        assert_eq!(back.to_json(), cp.to_json());
        assert_eq!(back.cases[0].gaps, vec![7, 15, 60]);
        assert!(matches!(Checkpoint::load(&path, "x", "beef"), Err(Error::CheckpointCorrupt(_))));
        assert!(matches!(Checkpoint::load(&path, "y", &hash), Err(Error::CheckpointCorrupt(_))));
        fs::write(&path, "{not json").unwrap();
        assert!(matches!(Checkpoint::load(&path, "x", &hash), Err(Error::CheckpointCorrupt(_))));
        assert!(Checkpoint::load(&dir.path().join("none.json"), "x", &hash).unwrap().is_none());
        assert_ne!(parameter_hash(&Check::Dickson, 100), parameter_hash(&Check::Dickson, 101));
    }
}
