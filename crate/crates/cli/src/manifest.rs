//! Provenance record written next to every output.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::Context;
use serde::Serialize;
use sha2::{Digest, Sha256};

#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub flags: serde_json::Value,
    pub seed: Option<u64>,
    /// Input path to lowercase hex sha256. Directories contribute one entry per file.
    pub inputs: BTreeMap<String, String>,
    pub version: String,
}

fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

fn digest_into(path: &Path, out: &mut BTreeMap<String, String>) -> anyhow::Result<()> {
    if path.is_dir() {
        let mut entries: Vec<PathBuf> = fs::read_dir(path)?.map(|e| e.map(|e| e.path())).collect::<Result<_, _>>()?;
        entries.sort();
        for e in entries.iter().filter(|e| e.is_file()) {
            digest_into(e, out)?;
        }
    } else {
        let bytes = fs::read(path).with_context(|| format!("reading {}", path.display()))?;
        out.insert(path.display().to_string(), sha256_hex(&bytes));
    }
    Ok(())
}

/// `out.csv` gets `out.csv.manifest.json`; a directory gets `manifest.json` inside it.
pub fn manifest_path(output: &Path) -> PathBuf {
    if output.is_dir() {
        output.join("manifest.json")
    } else {
        let mut name = output.as_os_str().to_owned();
        name.push(".manifest.json");
        PathBuf::from(name)
    }
}

impl RunManifest {
    pub fn new(command: &str, flags: &impl Serialize, seed: Option<u64>, inputs: &[&Path]) -> anyhow::Result<Self> {
        let mut digests = BTreeMap::new();
        for p in inputs {
            digest_into(p, &mut digests)?;
        }
        Ok(RunManifest {
            command: command.to_string(),
            flags: serde_json::to_value(flags)?,
            seed,
            inputs: digests,
            version: env!("CARGO_PKG_VERSION").to_string(),
        })
    }

    pub fn write_for(&self, output: &Path) -> anyhow::Result<()> {
        let path = manifest_path(output);
        let mut text = serde_json::to_string_pretty(self)?;
        text.push('\n');
        fs::write(&path, text).with_context(|| format!("writing {}", path.display()))
    }
}
