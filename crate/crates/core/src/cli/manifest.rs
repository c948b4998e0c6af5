//! Run manifests: enough to rerun a command and compare its outputs.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

pub const FILE_NAME: &str = "manifest.json";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: String,
    /// Arguments after the subcommand, without `--out`.
    pub args: Vec<String>,
    pub parameters: BTreeMap<String, String>,
    /// Input file path to SHA-256.
    pub input_hashes: BTreeMap<String, String>,
    pub tool_version: String,
    pub rng_seed: u64,
    pub wall_time_ms: u64,
    /// Output file name (relative to the output directory) to SHA-256.
    pub outputs: BTreeMap<String, String>,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

pub fn hash_file(path: &Path) -> Result<String> {
    Ok(sha256_hex(&std::fs::read(path)?))
}

impl RunManifest {
    pub fn new(command: &str, args: Vec<String>) -> Self {
        Self {
            command: command.to_string(),
            args,
            parameters: BTreeMap::new(),
            input_hashes: BTreeMap::new(),
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            rng_seed: 0,
            wall_time_ms: 0,
            outputs: BTreeMap::new(),
        }
    }

    pub fn param(&mut self, key: &str, value: impl ToString) {
        self.parameters.insert(key.to_string(), value.to_string());
    }

    pub fn input(&mut self, path: &Path) -> Result<()> {
        self.input_hashes.insert(path.display().to_string(), hash_file(path)?);
        Ok(())
    }

    pub fn write(&self, dir: &Path) -> Result<()> {
        let text = serde_json::to_string_pretty(self).expect("plain data serializes");
        std::fs::write(dir.join(FILE_NAME), text + "\n")?;
        Ok(())
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        serde_json::from_str(&text).map_err(|e| Error::Parse { line: e.line(), col: e.column(), msg: e.to_string() })
    }

    /// Inputs whose current contents no longer match the recorded hash.
    pub fn changed_inputs(&self) -> Vec<String> {
        self.input_hashes
            .iter()
            .filter(|(p, h)| hash_file(Path::new(p)).ok().as_ref() != Some(*h))
            .map(|(p, _)| p.clone())
            .collect()
    }
}

/// Writes output files into a directory and records their hashes.
pub struct OutputSink<'a> {
    dir: &'a Path,
    manifest: &'a mut RunManifest,
}

impl<'a> OutputSink<'a> {
    pub fn new(dir: &'a Path, manifest: &'a mut RunManifest) -> Result<Self> {
        std::fs::create_dir_all(dir)?;
        Ok(Self { dir, manifest })
    }

    pub fn put(&mut self, name: &str, bytes: impl AsRef<[u8]>) -> Result<()> {
        let bytes = bytes.as_ref();
        std::fs::write(self.dir.join(name), bytes)?;
        self.manifest.outputs.insert(name.to_string(), sha256_hex(bytes));
        Ok(())
    }

    pub fn manifest(&mut self) -> &mut RunManifest {
        self.manifest
    }
}
