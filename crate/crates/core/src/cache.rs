//! Content-addressed result cache.
//!
//! Entries live in `<dir>/<sha256>.json`. The key hashes the crate version
//! together with the request, so a release that changes conventions never
//! reads stale results. Writes go to a temporary file that is renamed into
//! place.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::Result;
use crate::exactmath::Framing;

pub const CACHE_ENV: &str = "C3_REMODEL_CACHE_DIR";

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct CacheKey {
    pub version: &'static str,
    pub kind: &'static str,
    pub g: u32,
    pub n: u32,
    pub framing: String,
    pub order: i64,
}

impl CacheKey {
    pub fn new(kind: &'static str, g: u32, n: u32, framing: &Framing, order: i64) -> Self {
        CacheKey {
            version: env!("CARGO_PKG_VERSION"),
            kind,
            g,
            n,
            framing: framing.to_string(),
            order,
        }
    }

    pub fn digest(&self) -> String {
        let text = serde_json::to_string(self).expect("key serializes");
        hex::encode(Sha256::digest(text.as_bytes()))
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CacheEntry {
    pub key: String,
    pub created_at: u64,
    pub payload: serde_json::Value,
}

#[derive(Debug, Clone)]
pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Cache { dir: dir.into() }
    }

    /// Flag value, then the environment variable, then the per-user default.
    pub fn locate(flag: Option<&Path>) -> Option<PathBuf> {
        if let Some(p) = flag {
            return Some(p.to_path_buf());
        }
        if let Some(p) = std::env::var_os(CACHE_ENV) {
            return Some(PathBuf::from(p));
        }
        if let Some(p) = std::env::var_os("XDG_CACHE_HOME") {
            return Some(PathBuf::from(p).join("c3-remodel"));
        }
        std::env::var_os("HOME").map(|h| PathBuf::from(h).join(".cache").join("c3-remodel"))
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn path_for(&self, key: &CacheKey) -> PathBuf {
        self.dir.join(format!("{}.json", key.digest()))
    }

    /// The stored payload, if any. Unreadable entries count as misses.
    pub fn get(&self, key: &CacheKey) -> Option<serde_json::Value> {
        let text = fs::read_to_string(self.path_for(key)).ok()?;
        let entry: CacheEntry = serde_json::from_str(&text).ok()?;
        (entry.key == key.digest()).then_some(entry.payload)
    }

    pub fn put(&self, key: &CacheKey, payload: serde_json::Value) -> Result<()> {
        fs::create_dir_all(&self.dir)?;
        let digest = key.digest();
        let entry = CacheEntry {
            key: digest.clone(),
            created_at: SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0),
            payload,
        };
        let tmp = self
            .dir
            .join(format!(".{digest}.{}.tmp", std::process::id()));
        fs::write(&tmp, serde_json::to_vec_pretty(&entry)?)?;
        fs::rename(&tmp, self.path_for(key))?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::q;

    #[test]
    fn round_trip_and_distinct_keys() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path());
        let k1 = CacheKey::new("fg", 2, 1, &Framing::Symbolic, 20);
        let k2 = CacheKey::new("fg", 2, 1, &Framing::fixed(q(1, 1)).unwrap(), 20);
        assert_ne!(k1.digest(), k2.digest());
        assert!(cache.get(&k1).is_none());
        cache.put(&k1, serde_json::json!({"value": "1/5760"})).unwrap();
        assert_eq!(cache.get(&k1).unwrap()["value"], "1/5760");
        assert!(cache.get(&k2).is_none());
        let leftovers: Vec<_> = fs::read_dir(dir.path())
            .unwrap()
            .filter_map(|e| e.ok())
            .filter(|e| e.file_name().to_string_lossy().ends_with(".tmp"))
            .collect();
        assert!(leftovers.is_empty());
    }

    #[test]
    fn corrupt_entries_are_misses() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path());
        let k = CacheKey::new("wgn", 1, 1, &Framing::Symbolic, 14);
        fs::write(cache.path_for(&k), "not json").unwrap();
        assert!(cache.get(&k).is_none());
    }
}
