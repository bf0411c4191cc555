//! Memoization of constructed modules, in memory and optionally on disk.

use std::collections::HashMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex};

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::module::GradedGtModule;

pub const CACHE_DIR_VAR: &str = "KRFL_CACHE_DIR";
pub const DEFAULT_CACHE_DIR: &str = ".krfl-cache";

/// Modules keyed by a descriptor string such as `"fusion n=1 i=1 xi=[2,1]"`.
///
/// Disk entries are bincode files named by the SHA-256 of the descriptor and
/// the crate version; unreadable entries are rebuilt.
#[derive(Debug, Default)]
pub struct Cache {
    mem: Mutex<HashMap<String, Arc<GradedGtModule>>>,
    dir: Option<PathBuf>,
}

impl Cache {
    pub fn memory() -> Cache {
        Cache::default()
    }

    pub fn with_dir(dir: impl Into<PathBuf>) -> Cache {
        Cache { mem: Mutex::default(), dir: Some(dir.into()) }
    }

    /// Disk-backed at `$KRFL_CACHE_DIR`, or `.krfl-cache` when unset.
    pub fn from_env() -> Cache {
        let dir = std::env::var_os(CACHE_DIR_VAR)
            .map(PathBuf::from)
            .unwrap_or_else(|| PathBuf::from(DEFAULT_CACHE_DIR));
        Cache::with_dir(dir)
    }

    pub fn dir(&self) -> Option<&Path> {
        self.dir.as_deref()
    }

    pub fn len(&self) -> usize {
        self.mem.lock().expect("cache lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn file_for(&self, key: &str) -> Option<PathBuf> {
        let mut h = Sha256::new();
        h.update(env!("CARGO_PKG_VERSION").as_bytes());
        h.update([0]);
        h.update(key.as_bytes());
        self.dir.as_ref().map(|d| d.join(format!("{}.bin", hex::encode(h.finalize()))))
    }

    pub fn get_or_build(
        &self,
        key: &str,
        build: impl FnOnce() -> Result<GradedGtModule>,
    ) -> Result<Arc<GradedGtModule>> {
        if let Some(m) = self.mem.lock().expect("cache lock").get(key) {
            return Ok(m.clone());
        }
        let file = self.file_for(key);
        let loaded = file
            .as_ref()
            .and_then(|f| fs::read(f).ok())
            .and_then(|bytes| bincode::deserialize::<GradedGtModule>(&bytes).ok());
        let m = match loaded {
            Some(m) => Arc::new(m),
            None => {
                let m = Arc::new(build()?);
                if let Some(f) = &file {
                    store(f, &m)?;
                }
                m
            }
        };
        self.mem.lock().expect("cache lock").insert(key.to_string(), m.clone());
        Ok(m)
    }
}

fn store(file: &Path, m: &GradedGtModule) -> Result<()> {
    let io = |e: std::io::Error| Error::Cache(format!("{}: {e}", file.display()));
    let dir = file.parent().expect("cache files live in a directory");
    fs::create_dir_all(dir).map_err(io)?;
    let bytes = bincode::serialize(m).map_err(|e| Error::Cache(e.to_string()))?;
    let tmp = file.with_extension(format!("tmp{}", std::process::id()));
    fs::write(&tmp, bytes).map_err(io)?;
    fs::rename(&tmp, file).map_err(io)
}
