//! Run manifests. Every command that writes an artifact file drops a
//! `<artifact>.manifest.json` beside it recording the exact invocation,
//! seeds, tool versions, SHA-256 digests of the inputs it read, and the
//! paths it wrote — enough to reproduce or audit the artifact later.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::Serialize;
use sha2::{Digest, Sha256};

#[derive(Debug, Clone, Serialize)]
pub struct Versions {
    pub cli: &'static str,
    pub core: &'static str,
}

#[derive(Debug, Clone, Serialize)]
pub struct InputDigest {
    pub path: String,
    pub sha256: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    /// Subcommand name.
    pub command: String,
    /// Full argument vector as invoked, program name included.
    pub args: Vec<String>,
    /// Every seed the run consumed, in the order it was drawn.
    pub seeds: Vec<u64>,
    pub versions: Versions,
    pub started_unix_ms: u128,
    pub finished_unix_ms: u128,
    pub input_digests: Vec<InputDigest>,
    pub output_paths: Vec<String>,
}

fn unix_ms() -> u128 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_millis())
        .unwrap_or(0)
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    let digest = Sha256::digest(bytes);
    let mut hex = String::with_capacity(64);
    for b in digest {
        use std::fmt::Write;
        write!(hex, "{b:02x}").expect("writing to a String cannot fail");
    }
    hex
}

impl RunManifest {
    pub fn begin(command: &str) -> Self {
        RunManifest {
            command: command.to_string(),
            args: std::env::args().collect(),
            seeds: Vec::new(),
            versions: Versions {
                cli: env!("CARGO_PKG_VERSION"),
                core: turanlab_core::VERSION,
            },
            started_unix_ms: unix_ms(),
            finished_unix_ms: 0,
            input_digests: Vec::new(),
            output_paths: Vec::new(),
        }
    }

    pub fn record_seed(&mut self, seed: u64) {
        self.seeds.push(seed);
    }

    pub fn record_input(&mut self, path: &Path, bytes: &[u8]) {
        self.input_digests.push(InputDigest {
            path: path.display().to_string(),
            sha256: sha256_hex(bytes),
        });
    }

    pub fn record_output(&mut self, path: &Path) {
        self.output_paths.push(path.display().to_string());
    }

    /// Sibling path `<artifact>.manifest.json`.
    pub fn sibling_path(artifact: &Path) -> PathBuf {
        let mut name = artifact.file_name().unwrap_or_default().to_os_string();
        name.push(".manifest.json");
        artifact.with_file_name(name)
    }

    /// Stamps the finish time and writes the manifest beside `artifact`.
    pub fn write_beside(mut self, artifact: &Path) -> anyhow::Result<PathBuf> {
        self.finished_unix_ms = unix_ms();
        let path = Self::sibling_path(artifact);
        let json = serde_json::to_string_pretty(&self)?;
        fs::write(&path, json).map_err(|e| anyhow::anyhow!("{}: {e}", path.display()))?;
        Ok(path)
    }
}
