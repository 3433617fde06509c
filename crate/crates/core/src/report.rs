//! Machine-readable experiment reports.

use std::collections::BTreeMap;

use serde::{Serialize, Serializer};
use sha2::{Digest, Sha256};

use crate::bounds::Bound;
use crate::error::Error;

/// Toolkit version recorded in every report.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Seed of a randomized run, or the marker for a deterministic one.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeedTag {
    Seed(u64),
    Deterministic,
}

impl Serialize for SeedTag {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            SeedTag::Seed(v) => s.serialize_u64(*v),
            SeedTag::Deterministic => s.serialize_str("deterministic"),
        }
    }
}

/// Where the input matrix came from.
#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct InputDescriptor {
    /// `file:<path>` or `synthetic:<spec>`.
    pub source: String,
    pub rows: usize,
    pub cols: usize,
    /// Seed of the synthetic generator; `null` for files and seed-free generators.
    pub seed: Option<u64>,
}

/// Parameters an experiment was run with; unused ones are `null`.
#[derive(Debug, Clone, Default, Serialize, PartialEq)]
pub struct Parameters {
    pub k: Option<usize>,
    pub r: Option<usize>,
    pub n: Option<usize>,
    pub eps: Option<f64>,
    pub delta: Option<f64>,
    pub alpha: Option<f64>,
    pub c0: Option<f64>,
    pub trials: Option<usize>,
    pub mode: Option<String>,
    pub method: Option<String>,
}

/// One experiment's result.
#[derive(Debug, Clone, Serialize)]
pub struct BenchReport {
    pub experiment: String,
    pub algorithm: String,
    pub input: InputDescriptor,
    pub seed: SeedTag,
    pub parameters: Parameters,
    /// Measured errors and related quantities, keyed by name.
    pub measured: BTreeMap<String, f64>,
    /// Measured quantity divided by its baseline, keyed by name.
    pub ratios: BTreeMap<String, f64>,
    pub bound: Option<Bound>,
    /// Whether the measurement respects the bound (or the experiment's success criterion).
    pub satisfied: Option<bool>,
    /// Column or row indices chosen by the algorithm.
    pub selection: Option<Vec<usize>>,
    pub warnings: Vec<String>,
    pub notes: Vec<String>,
    /// Wall-clock seconds; excluded from the determinism hash.
    pub timings: BTreeMap<String, f64>,
    pub version: String,
    /// SHA-256 of the report with `timings` emptied and this field blank.
    pub determinism_hash: String,
}

impl BenchReport {
    pub fn new(experiment: impl Into<String>, algorithm: impl Into<String>, input: InputDescriptor, seed: SeedTag) -> Self {
        BenchReport {
            experiment: experiment.into(),
            algorithm: algorithm.into(),
            input,
            seed,
            parameters: Parameters::default(),
            measured: BTreeMap::new(),
            ratios: BTreeMap::new(),
            bound: None,
            satisfied: None,
            selection: None,
            warnings: Vec::new(),
            notes: Vec::new(),
            timings: BTreeMap::new(),
            version: VERSION.to_string(),
            determinism_hash: String::new(),
        }
    }

    pub fn measure(&mut self, key: &str, value: f64) -> &mut Self {
        self.measured.insert(key.to_string(), value);
        self
    }

    pub fn ratio(&mut self, key: &str, value: f64) -> &mut Self {
        self.ratios.insert(key.to_string(), value);
        self
    }

    pub fn time(&mut self, key: &str, seconds: f64) -> &mut Self {
        self.timings.insert(key.to_string(), seconds);
        self
    }

    /// Hash of everything except the timing fields.
    pub fn compute_hash(&self) -> String {
        let mut stripped = self.clone();
        stripped.timings.clear();
        stripped.determinism_hash.clear();
        let text = serde_json::to_string(&stripped).expect("report serializes");
        hex::encode(Sha256::digest(text.as_bytes()))
    }

    /// Fill in [`BenchReport::determinism_hash`].
    pub fn seal(mut self) -> Self {
        self.determinism_hash = self.compute_hash();
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Structured error document written by the command-line front end.
pub fn error_json(err: &Error) -> String {
    let doc = serde_json::json!({
        "error": {
            "kind": err.kind(),
            "message": err.to_string(),
            "exit_code": err.exit_code(),
        }
    });
    serde_json::to_string_pretty(&doc).expect("error serializes")
}

/// SHA-256 hex digest of a byte string.
pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}
