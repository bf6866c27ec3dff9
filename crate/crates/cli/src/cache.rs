//! Content-addressed result cache.
//!
//! An entry is `<key>.json` holding the payload text and its digest. Writers
//! take an exclusive lock on `<key>.lock`, re-check for an entry, then write a
//! temp file and rename it into place, so concurrent identical runs compute
//! once and write once.

use std::fs::{self, File, OpenOptions};
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use anyhow::Result;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

pub struct Cache {
    dir: Option<PathBuf>,
    verbose: bool,
}

fn digest(text: &str) -> String {
    hex::encode(Sha256::digest(text.as_bytes()))
}

/// Hash of everything that determines a result.
pub fn cache_key(command: &str, params: &Value, code_version: &str, data_version: &str) -> String {
    digest(&format!("gwt-cache-1\0{command}\0{params}\0{code_version}\0{data_version}"))
}

#[derive(Debug, PartialEq, Eq)]
pub enum Outcome {
    Hit,
    Miss,
    Uncached,
}

impl Cache {
    pub fn new(dir: Option<PathBuf>, verbose: bool) -> Cache {
        Cache { dir, verbose }
    }

    fn note(&self, msg: &str) {
        if self.verbose {
            eprintln!("cache: {msg}");
        }
    }

    fn read(&self, path: &Path, key: &str) -> Option<String> {
        let text = fs::read_to_string(path).ok()?;
        let entry: Value = match serde_json::from_str(&text) {
            Ok(v) => v,
            Err(_) => return self.discard(path, key),
        };
        let payload = entry.get("payload").and_then(Value::as_str);
        let ok = entry.get("key").and_then(Value::as_str) == Some(key)
            && payload.is_some_and(|p| entry.get("digest").and_then(Value::as_str) == Some(&digest(p)));
        if ok {
            payload.map(str::to_owned)
        } else {
            self.discard(path, key)
        }
    }

    fn discard(&self, path: &Path, key: &str) -> Option<String> {
        self.note(&format!("discarding corrupt entry {key}"));
        let _ = fs::remove_file(path);
        None
    }

    /// Returns the payload for `key`, computing and storing it on a miss.
    pub fn get_or_compute(&self, key: &str, compute: impl FnOnce() -> Result<String>) -> Result<(String, Outcome)> {
        let start = Instant::now();
        let Some(dir) = &self.dir else {
            return Ok((compute()?, Outcome::Uncached));
        };
        let entry = dir.join(format!("{key}.json"));
        if let Some(p) = self.read(&entry, key) {
            self.note(&format!("hit {key} in {:.3?}", start.elapsed()));
            return Ok((p, Outcome::Hit));
        }
        let lock = match fs::create_dir_all(dir).and_then(|_| {
            OpenOptions::new().create(true).truncate(false).write(true).open(dir.join(format!("{key}.lock")))
        }) {
            Ok(f) => f,
            Err(e) => {
                eprintln!("warning: cache directory {} is not writable ({e}); running uncached", dir.display());
                return Ok((compute()?, Outcome::Uncached));
            }
        };
        if let Err(e) = lock.lock() {
            eprintln!("warning: cannot lock cache entry ({e}); running uncached");
            return Ok((compute()?, Outcome::Uncached));
        }
        // another writer may have finished while we waited
        if let Some(p) = self.read(&entry, key) {
            self.note(&format!("hit {key} after wait in {:.3?}", start.elapsed()));
            return Ok((p, Outcome::Hit));
        }
        let payload = compute()?;
        self.note(&format!("miss {key}, computed in {:.3?}", start.elapsed()));
        if let Err(e) = write_entry(dir, &entry, key, &payload) {
            eprintln!("warning: could not store cache entry in {} ({e})", dir.display());
        }
        drop(lock);
        Ok((payload, Outcome::Miss))
    }
}

fn write_entry(dir: &Path, entry: &Path, key: &str, payload: &str) -> std::io::Result<()> {
    let stamp = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
    let body = json!({ "key": key, "timestamp": stamp, "digest": digest(payload), "payload": payload });
    let tmp = dir.join(format!("{key}.tmp.{}", std::process::id()));
    let mut f = File::create(&tmp)?;
    f.write_all(body.to_string().as_bytes())?;
    f.sync_all()?;
    fs::rename(&tmp, entry)
}
