//! Run directories and manifests.
//!
//! Every invocation that produces a report gets its own directory under the
//! output root, named `<command>-<seed>-<hash8>` where the hash covers the
//! resolved options. A manifest plus the copied inputs make a run directory
//! self-contained for reproduction (timestamps excluded).

use std::fs;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

pub struct RunDir {
    pub dir: PathBuf,
    command: String,
    seed: u64,
    options_json: String,
    started_ms: u128,
    artifacts: Vec<(String, String)>,
}

pub fn unix_ms() -> u128 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_millis())
        .unwrap_or(0)
}

/// FNV-1a 64-bit hash, hex-truncated to 8 characters.
fn short_hash(text: &str) -> String {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in text.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x1000_0000_01b3);
    }
    format!("{:08x}", (h >> 32) as u32 ^ h as u32)
}

impl RunDir {
    /// Create `<out>/<command>-<seed>-<hash8>`, suffixing `-1`, `-2`, … when
    /// the directory already exists (two runs never share a directory).
    pub fn create(
        out_root: &Path,
        command: &str,
        seed: u64,
        options_json: &str,
    ) -> std::io::Result<RunDir> {
        fs::create_dir_all(out_root)?;
        let base = format!("{command}-{seed}-{}", short_hash(options_json));
        let mut dir = out_root.join(&base);
        let mut counter = 0;
        while dir.exists() {
            counter += 1;
            dir = out_root.join(format!("{base}-{counter}"));
        }
        fs::create_dir(&dir)?;
        Ok(RunDir {
            dir,
            command: command.to_string(),
            seed,
            options_json: options_json.to_string(),
            started_ms: unix_ms(),
            artifacts: Vec::new(),
        })
    }

    /// Write an artifact file and record it in the manifest.
    pub fn write_artifact(
        &mut self,
        key: &str,
        filename: &str,
        contents: &str,
    ) -> std::io::Result<PathBuf> {
        let path = self.dir.join(filename);
        fs::write(&path, contents)?;
        self.artifacts.push((key.to_string(), filename.to_string()));
        Ok(path)
    }

    /// Write `manifest.json` and finish the run.
    pub fn finalize(self, version: &str) -> std::io::Result<PathBuf> {
        let mut artifacts = String::from("{");
        for (i, (key, file)) in self.artifacts.iter().enumerate() {
            if i > 0 {
                artifacts.push(',');
            }
            artifacts.push_str(&format!("\"{key}\":\"{file}\""));
        }
        artifacts.push('}');
        let manifest = format!(
            "{{\"command\":\"{}\",\"seed\":{},\"options\":{},\"started_unix_ms\":{},\"finished_unix_ms\":{},\"artifacts\":{},\"version\":\"{}\"}}",
            self.command, self.seed, self.options_json, self.started_ms, unix_ms(), artifacts, version,
        );
        let path = self.dir.join("manifest.json");
        fs::write(&path, manifest)?;
        Ok(path)
    }
}
