use std::collections::BTreeMap;
use std::path::Path;

use majority_core::schemes::SchemeReport;
use majority_core::{Error, Witness};
use serde::Serialize;
use sha2::{Digest, Sha256};

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAILED: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_PRECONDITION: u8 = 3;
pub const EXIT_INVARIANT: u8 = 4;

#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Failure { code: EXIT_USAGE, message: message.into() }
    }

    pub fn io(path: &Path, err: std::io::Error) -> Self {
        Failure::usage(format!("{}: {err}", path.display()))
    }
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        let code = match err {
            Error::Graph(_) | Error::Input(_) => EXIT_USAGE,
            Error::Precondition(_) => EXIT_PRECONDITION,
            Error::Invariant(_) | Error::SelectorExhausted { .. } => EXIT_INVARIANT,
        };
        Failure { code, message: err.to_string() }
    }
}

#[derive(Debug, Serialize)]
pub struct Params {
    pub n: u32,
    pub m: usize,
    pub alpha: Vec<String>,
}

#[derive(Debug, Serialize)]
pub struct Verdict {
    pub pass: bool,
    pub witness: Option<Witness>,
}

#[derive(Debug, Serialize)]
pub struct OracleSummary {
    pub nodes: u64,
    pub limit_hit: bool,
    pub result: &'static str,
}

/// The JSON document written by `colour --report`, `verify --json` and
/// `oracle --json`.
#[derive(Debug, Serialize)]
pub struct RunReport {
    pub command: &'static str,
    pub k: usize,
    pub algorithm: Option<String>,
    pub params: Option<Params>,
    pub verdict: Option<Verdict>,
    pub oracle: Option<OracleSummary>,
    pub seed: Option<u64>,
    /// SHA-256 of each input file, keyed by role.
    pub inputs: BTreeMap<&'static str, String>,
    pub scheme: Option<SchemeReport>,
    pub duration_ms: u64,
}

impl RunReport {
    pub fn new(command: &'static str, k: usize) -> Self {
        RunReport {
            command,
            k,
            algorithm: None,
            params: None,
            verdict: None,
            oracle: None,
            seed: None,
            inputs: BTreeMap::new(),
            scheme: None,
            duration_ms: 0,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }
}

pub fn digest(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}
