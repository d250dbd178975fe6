//! Run-directory management: one writer per directory (lock file), canonical
//! config copy, and an atomically written manifest at run end.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use crate::checkpoint::fnv1a64;
use crate::jsonout::Json;

pub struct RunDir {
    path: PathBuf,
    lock_path: PathBuf,
    started: u64,
    files: Vec<String>,
    config_hash: String,
}

fn now_unix() -> u64 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0)
}

impl RunDir {
    /// Create (or reuse) the directory and take the writer lock. Fails when
    /// another run holds the lock.
    pub fn open(path: &Path, canonical_config: &str) -> std::io::Result<RunDir> {
        fs::create_dir_all(path)?;
        let lock_path = path.join(".lock");
        let mut lock = fs::OpenOptions::new()
            .write(true)
            .create_new(true)
            .open(&lock_path)
            .map_err(|e| {
                if e.kind() == std::io::ErrorKind::AlreadyExists {
                    std::io::Error::new(
                        std::io::ErrorKind::AlreadyExists,
                        format!(
                            "run directory `{}` is locked by another run (remove {} if stale)",
                            path.display(),
                            lock_path.display()
                        ),
                    )
                } else {
                    e
                }
            })?;
        let _ = writeln!(lock, "{}", std::process::id());

        let config_hash = format!("{:016x}", fnv1a64(canonical_config.as_bytes()));
        let mut dir = RunDir {
            path: path.to_path_buf(),
            lock_path,
            started: now_unix(),
            files: Vec::new(),
            config_hash,
        };
        dir.write_text("config.txt", canonical_config)?;
        Ok(dir)
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn file(&self, name: &str) -> PathBuf {
        self.path.join(name)
    }

    /// Register a produced file in the manifest inventory.
    pub fn track(&mut self, name: &str) {
        if !self.files.iter().any(|f| f == name) {
            self.files.push(name.to_string());
        }
    }

    pub fn write_text(&mut self, name: &str, content: &str) -> std::io::Result<()> {
        fs::write(self.path.join(name), content)?;
        self.track(name);
        Ok(())
    }

    pub fn write_json(&mut self, name: &str, json: &Json) -> std::io::Result<()> {
        self.write_text(name, &format!("{json}\n"))
    }

    /// Write the manifest atomically. Status is `ok` only when every tracked
    /// file actually exists.
    pub fn finish(mut self, status: Result<(), &str>) -> std::io::Result<()> {
        let all_present = self.files.iter().all(|f| self.path.join(f).exists());
        let status_str = match status {
            Ok(()) if all_present => "ok".to_string(),
            Ok(()) => "error(missing output files)".to_string(),
            Err(reason) => format!("error({reason})"),
        };
        let manifest = Json::obj(vec![
            ("config_hash", Json::Str(self.config_hash.clone())),
            ("version", Json::Str(env!("CARGO_PKG_VERSION").into())),
            ("started_unix", Json::Int(self.started as i64)),
            ("finished_unix", Json::Int(now_unix() as i64)),
            ("status", Json::Str(status_str)),
            (
                "files",
                Json::Arr(self.files.iter().map(|f| Json::Str(f.clone())).collect()),
            ),
        ]);
        let tmp = self.path.join("manifest.json.tmp");
        fs::write(&tmp, format!("{manifest}\n"))?;
        fs::rename(&tmp, self.path.join("manifest.json"))?;
        self.files.push("manifest.json".into());
        Ok(())
    }
}

impl Drop for RunDir {
    fn drop(&mut self) {
        let _ = fs::remove_file(&self.lock_path);
    }
}
