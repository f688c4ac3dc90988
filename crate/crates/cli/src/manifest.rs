use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

/// Sidecar written next to every output file. `params` holds the fully
/// resolved arguments of the command, defaults included.
#[derive(Debug, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: String,
    pub params: serde_json::Value,
    pub graph_file: PathBuf,
    pub graph_sha256: String,
    pub seed: Option<u64>,
    pub version: String,
    pub duration_seconds: f64,
}

impl RunManifest {
    pub fn path_for(output: &Path) -> PathBuf {
        let mut name = output.file_name().unwrap_or_default().to_os_string();
        name.push(".manifest.json");
        output.with_file_name(name)
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("cannot read manifest {}", path.display()))?;
        serde_json::from_str(&text)
            .with_context(|| format!("malformed manifest {}", path.display()))
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        let mut text = serde_json::to_string_pretty(self)?;
        text.push('\n');
        std::fs::write(path, text)
            .with_context(|| format!("cannot write manifest {}", path.display()))
    }

    /// Fails if the graph file changed since the manifest was written.
    pub fn check_graph(&self, bytes: &[u8]) -> Result<()> {
        let actual = digest(bytes);
        if actual != self.graph_sha256 {
            bail!(
                "graph file {} has sha256 {actual}, manifest expects {}",
                self.graph_file.display(),
                self.graph_sha256
            );
        }
        Ok(())
    }
}

pub fn digest(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}
