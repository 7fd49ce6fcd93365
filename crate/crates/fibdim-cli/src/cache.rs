//! Content-addressed cache for component-dimension tables.
//!
//! Computing dim Y_j degree by degree is the only expensive step of the
//! Hilbert-based commands, and it depends on nothing but the module and
//! the cap.  The cache keys each table by the SHA-256 digest of the
//! module's canonical serialization together with the cap, so equivalent
//! files (different comment layout, term order, duplicate terms) share
//! entries.  Entries are plain JSON arrays in one directory — safe to
//! delete at any time — and every cache failure (missing, unreadable,
//! corrupt) silently falls back to recomputation: the cache can change
//! timing, never results.
//!
//! The directory is `$FIBDIM_CACHE_DIR` when set, else `.fibdim-cache`
//! under the working directory.

use sha2::{Digest, Sha256};
use std::fs;
use std::path::PathBuf;

/// Environment variable naming the cache directory.
pub const CACHE_DIR_ENV: &str = "FIBDIM_CACHE_DIR";

/// Handle on the cache directory.  `None` stands for "caching disabled".
pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    /// Cache per the environment, or `None` when `--no-cache` was given.
    pub fn open(no_cache: bool) -> Option<Cache> {
        if no_cache {
            return None;
        }
        let dir = std::env::var_os(CACHE_DIR_ENV)
            .map(PathBuf::from)
            .unwrap_or_else(|| PathBuf::from(".fibdim-cache"));
        Some(Cache { dir })
    }

    /// Digest of (canonical module text, cap): the cache key.
    pub fn key(canonical: &str, cap: usize) -> String {
        let mut hasher = Sha256::new();
        hasher.update(canonical.as_bytes());
        hasher.update(format!("\ncap {cap}").as_bytes());
        format!("{:x}", hasher.finalize())
    }

    fn path_for(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    /// Stored dimension table for the key, if present and well-formed.
    pub fn load(&self, key: &str) -> Option<Vec<usize>> {
        let text = fs::read_to_string(self.path_for(key)).ok()?;
        serde_json::from_str(&text).ok()
    }

    /// Store a dimension table; errors are deliberately ignored.
    pub fn store(&self, key: &str, dims: &[usize]) {
        if fs::create_dir_all(&self.dir).is_err() {
            return;
        }
        let tmp = self.dir.join(format!("{key}.tmp"));
        let body = serde_json::to_string(dims).expect("a usize array always serializes");
        if fs::write(&tmp, body).is_ok() {
            let _ = fs::rename(&tmp, self.path_for(key));
        }
    }
}
