use std::collections::BTreeMap;
use std::path::Path;

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};
use thiserror::Error;
use wm_core::{Seed, WmError};

pub const SCHEMA: &str = "wm/1";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Input { path: String, source: WmError },
    #[error(transparent)]
    Core(#[from] WmError),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        let core = match self {
            CliError::Usage(_) => return 2,
            CliError::Input { source, .. } => source,
            CliError::Core(e) => e,
        };
        if core.is_resource_limit() {
            3
        } else {
            2
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

#[derive(Serialize)]
pub struct SeedEcho {
    pub name: &'static str,
    pub seed: u64,
    pub stream: u64,
}

/// Everything a command produced; `timing_ms` is the only field that may
/// differ between identical runs.
#[derive(Serialize)]
pub struct RunReport {
    pub schema: &'static str,
    pub command: Vec<String>,
    pub version: &'static str,
    pub seeds: Vec<SeedEcho>,
    pub input_digests: BTreeMap<String, String>,
    pub payload: Value,
    pub timing_ms: Option<u64>,
}

/// Collects inputs, seeds and the payload while a command runs.
#[derive(Default)]
pub struct Context {
    pub seeds: Vec<SeedEcho>,
    pub digests: BTreeMap<String, String>,
    /// Outcome was "nothing found" or "not solvable".
    pub negative: bool,
}

impl Context {
    pub fn seed(&mut self, name: &'static str, seed: Seed) -> Seed {
        self.seeds.push(SeedEcho {
            name,
            seed: seed.seed,
            stream: seed.stream,
        });
        seed
    }

    pub fn read(&mut self, path: &Path) -> CliResult<Vec<u8>> {
        let bytes = std::fs::read(path).map_err(|e| CliError::Input {
            path: path.display().to_string(),
            source: e.into(),
        })?;
        self.digests.insert(path.display().to_string(), sha256_hex(&bytes));
        Ok(bytes)
    }

    pub fn read_text(&mut self, path: &Path) -> CliResult<String> {
        let bytes = self.read(path)?;
        String::from_utf8(bytes).map_err(|_| CliError::Input {
            path: path.display().to_string(),
            source: WmError::Parse {
                line: 0,
                message: "not valid UTF-8".into(),
            },
        })
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}
