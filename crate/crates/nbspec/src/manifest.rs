//! Experiment manifests: everything needed to replay a run, hashed so each
//! output row can point back at the manifest that produced it.

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

/// Every sampler in a run draws from `rng_stream(seed, stream)`, with the
/// stream chosen as stated here.
pub const STREAM_POLICY: &str = "chacha8 seeded from the manifest seed; stream id = trial index within each cell";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InputFile {
    pub path: String,
    pub sha256: String,
}

impl InputFile {
    pub fn new(path: &str, bytes: &[u8]) -> Self {
        Self { path: path.into(), sha256: hex::encode(Sha256::digest(bytes)) }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentManifest {
    /// Subcommand name followed by the first 12 hex digits of the hash.
    pub id: String,
    pub experiment: String,
    pub code_version: String,
    pub seed: Option<u64>,
    pub stream_policy: String,
    pub parameters: Value,
    pub inputs: Vec<InputFile>,
    pub outputs: Vec<String>,
}

impl ExperimentManifest {
    pub fn new(experiment: &str, seed: Option<u64>, parameters: Value, inputs: Vec<InputFile>) -> Self {
        let mut m = Self {
            id: String::new(),
            experiment: experiment.into(),
            code_version: env!("CARGO_PKG_VERSION").into(),
            seed,
            stream_policy: STREAM_POLICY.into(),
            parameters,
            inputs,
            outputs: Vec::new(),
        };
        m.id = format!("{experiment}-{}", &m.hash()[..12]);
        m
    }

    /// SHA-256 over the fields that determine the results. Input files count
    /// by content only, and the id and output list are derived, so moving a
    /// file or changing `--out` leaves the hash alone.
    pub fn hash(&self) -> String {
        let digests: Vec<&str> = self.inputs.iter().map(|i| i.sha256.as_str()).collect();
        // serde_json maps are sorted by key, so this rendering is canonical.
        let canonical = serde_json::json!({
            "experiment": self.experiment,
            "code_version": self.code_version,
            "seed": self.seed,
            "stream_policy": self.stream_policy,
            "parameters": self.parameters,
            "inputs": digests,
        });
        hex::encode(Sha256::digest(canonical.to_string().as_bytes()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("manifest serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn hash_ignores_paths_and_outputs() {
        let a = ExperimentManifest::new("census", None, json!({"r_max": 6}), vec![InputFile::new("a.txt", b"4 0\n")]);
        let mut b = ExperimentManifest::new("census", None, json!({"r_max": 6}), vec![InputFile::new("b.txt", b"4 0\n")]);
        b.outputs.push("x.csv".into());
        assert_eq!(a.hash(), b.hash());
        assert_eq!(a.id, b.id);
        assert!(a.id.starts_with("census-"));
    }

    #[test]
    fn hash_tracks_parameters_seed_and_content() {
        let base = ExperimentManifest::new("lift", Some(1), json!({"trials": 5}), vec![]);
        let other_seed = ExperimentManifest::new("lift", Some(2), json!({"trials": 5}), vec![]);
        let other_params = ExperimentManifest::new("lift", Some(1), json!({"trials": 6}), vec![]);
        let other_input = ExperimentManifest::new("lift", Some(1), json!({"trials": 5}), vec![InputFile::new("g", b"x")]);
        for m in [other_seed, other_params, other_input] {
            assert_ne!(base.hash(), m.hash());
        }
    }

    #[test]
    fn manifest_round_trips_through_json() {
        let m = ExperimentManifest::new("laws", None, json!({"q": [5.0, 10.0]}), vec![]);
        let back: ExperimentManifest = serde_json::from_str(&m.to_json()).unwrap();
        assert_eq!(back, m);
        assert_eq!(back.hash(), m.hash());
    }
}
