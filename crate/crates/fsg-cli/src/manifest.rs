use std::time::Duration;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::Outcome;

/// Record of one run: enough to rerun it and check the output bytes.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub subcommand: String,
    /// The resolved job, with graph files and configs inlined.
    pub config: Value,
    pub seed: u64,
    pub version: String,
    pub wall_time_ms: f64,
    pub exit_code: i32,
    /// `sha256:` hex digest over the primary output, then each extra output.
    pub output_digest: String,
}

impl RunManifest {
    pub fn new(subcommand: String, config: Value, seed: u64, wall: Duration, outcome: &Outcome) -> Self {
        RunManifest {
            subcommand,
            config,
            seed,
            version: env!("CARGO_PKG_VERSION").to_string(),
            wall_time_ms: wall.as_secs_f64() * 1e3,
            exit_code: outcome.code,
            output_digest: output_digest(outcome),
        }
    }
}

pub fn output_digest(outcome: &Outcome) -> String {
    let mut h = Sha256::new();
    h.update((outcome.stdout.len() as u64).to_le_bytes());
    h.update(&outcome.stdout);
    for (name, bytes) in &outcome.artifacts {
        h.update(name.as_bytes());
        h.update((bytes.len() as u64).to_le_bytes());
        h.update(bytes);
    }
    format!("sha256:{}", hex::encode(h.finalize()))
}
