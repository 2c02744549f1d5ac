use serde::Serialize;
use sha2::{Digest, Sha256};
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::time::Instant;

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub tool_version: &'static str,
    pub subcommand: String,
    pub argv: Vec<String>,
    pub inputs: BTreeMap<String, String>,
    pub outputs: BTreeMap<String, String>,
    pub wall_time_seconds: f64,
}

/// `dir/b.pmm` → `dir/b.manifest.json`.
pub fn manifest_path(output: &Path) -> PathBuf {
    let stem = output.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    output.with_file_name(format!("{stem}.manifest.json"))
}

/// Collects the files a run reads and writes, then drops a manifest next to
/// every output.
pub struct Recorder {
    subcommand: String,
    argv: Vec<String>,
    start: Instant,
    inputs: BTreeMap<String, String>,
    outputs: Vec<(PathBuf, String)>,
}

impl Recorder {
    pub fn new(subcommand: &str, argv: &[String]) -> Self {
        Self {
            subcommand: subcommand.into(),
            argv: argv.to_vec(),
            start: Instant::now(),
            inputs: BTreeMap::new(),
            outputs: Vec::new(),
        }
    }

    pub fn read(&mut self, path: &Path) -> std::io::Result<String> {
        let text = std::fs::read_to_string(path)?;
        self.inputs.insert(path.display().to_string(), sha256_hex(text.as_bytes()));
        Ok(text)
    }

    pub fn write(&mut self, path: &Path, text: &str) -> std::io::Result<()> {
        std::fs::write(path, text)?;
        self.outputs.push((path.to_path_buf(), sha256_hex(text.as_bytes())));
        Ok(())
    }

    pub fn finish(self) -> std::io::Result<()> {
        let outputs: BTreeMap<String, String> =
            self.outputs.iter().map(|(p, d)| (p.display().to_string(), d.clone())).collect();
        let manifest = RunManifest {
            tool_version: env!("CARGO_PKG_VERSION"),
            subcommand: self.subcommand,
            argv: self.argv,
            inputs: self.inputs,
            outputs,
            wall_time_seconds: self.start.elapsed().as_secs_f64(),
        };
        let text = serde_json::to_string_pretty(&manifest).expect("manifest serializes") + "\n";
        for (p, _) in &self.outputs {
            std::fs::write(manifest_path(p), &text)?;
        }
        Ok(())
    }
}
