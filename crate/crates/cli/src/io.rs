use std::fs;
use std::path::{Path, PathBuf};

use groupiso::group::{FiniteGroup, GroupFile};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Exit code 2.
    #[error("{0}")]
    Input(String),
    /// Exit code 1.
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Internal(_) => 1,
        }
    }
}

impl From<groupiso::Error> for CliError {
    fn from(e: groupiso::Error) -> Self {
        use groupiso::Error as E;
        match e {
            E::Invariant(_) | E::NotASubcoset(_) | E::FactorClassViolation(_) => CliError::Internal(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Debug, Serialize, Deserialize)]
pub struct RunReport {
    pub command: String,
    /// SHA-256 over the input files in argument order.
    pub inputs_digest: String,
    pub seed: u64,
    pub outputs: serde_json::Value,
}

/// Reads input files and remembers their bytes for the digest.
#[derive(Default)]
pub struct Inputs {
    hasher: Sha256,
}

impl Inputs {
    pub fn json<T: DeserializeOwned>(&mut self, path: &Path) -> CliResult<T> {
        let bytes = fs::read(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        self.hasher.update(&bytes);
        serde_json::from_slice(&bytes).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
    }

    pub fn group(&mut self, path: &Path, max_order: usize) -> CliResult<FiniteGroup> {
        let file: GroupFile = self.json(path)?;
        if file.order > max_order {
            return Err(CliError::Input(format!("{}: order {} exceeds --max-order {max_order}", path.display(), file.order)));
        }
        Ok(FiniteGroup::from_file(&file)?)
    }

    pub fn digest(self) -> String {
        hex::encode(self.hasher.finalize())
    }
}

pub fn write_report(report: &RunReport, out: Option<&PathBuf>) -> CliResult<()> {
    let mut text = serde_json::to_string_pretty(report).map_err(|e| CliError::Internal(e.to_string()))?;
    text.push('\n');
    match out {
        Some(path) => fs::write(path, text).map_err(|e| CliError::Input(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
