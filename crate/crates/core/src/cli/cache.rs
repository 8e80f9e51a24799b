//! On-disk cache of homology entries, one JSON file per key.

use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::complex::ComplexVariant;
use crate::diagram::Parity;
use crate::error::{Error, Result};
use crate::homology::HomologyEntry;
use crate::ring::Ring;

/// Bumped whenever cached payloads could change meaning.
pub const ENGINE_VERSION: &str = concat!(env!("CARGO_PKG_VERSION"), "+cache1");

/// Everything a cached homology entry depends on.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryKey {
    pub complex: ComplexVariant,
    pub parity: Parity,
    pub i: usize,
    pub j: usize,
    pub ring: Ring,
    pub max_slice: usize,
    pub engine: String,
}

impl EntryKey {
    pub fn new(complex: ComplexVariant, parity: Parity, i: usize, j: usize, ring: Ring, max_slice: usize) -> Self {
        EntryKey {
            complex,
            parity,
            i,
            j,
            ring,
            max_slice,
            engine: ENGINE_VERSION.to_string(),
        }
    }

    pub fn digest(&self) -> String {
        let text = serde_json::to_string(self).expect("key serializes");
        let hash = Sha256::digest(text.as_bytes());
        hash.iter().map(|b| format!("{b:02x}")).collect()
    }
}

#[derive(Serialize, Deserialize)]
struct Stored {
    key: EntryKey,
    entry: HomologyEntry,
}

#[derive(Clone, Debug)]
pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn open(dir: impl Into<PathBuf>) -> Result<Self> {
        let dir = dir.into();
        fs::create_dir_all(&dir)?;
        Ok(Cache { dir })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn path(&self, key: &EntryKey) -> PathBuf {
        self.dir.join(format!("{}.json", key.digest()))
    }

    /// A stored entry whose recorded key matches exactly; anything else
    /// (missing, unreadable, other version) is a miss.
    pub fn get(&self, key: &EntryKey) -> Option<HomologyEntry> {
        let text = fs::read_to_string(self.path(key)).ok()?;
        let stored: Stored = serde_json::from_str(&text).ok()?;
        (stored.key == *key).then_some(stored.entry)
    }

    /// Written to a temporary file first, then renamed into place.
    pub fn put(&self, key: &EntryKey, entry: &HomologyEntry) -> Result<()> {
        let target = self.path(key);
        if target.exists() {
            return Ok(());
        }
        let stored = Stored {
            key: key.clone(),
            entry: entry.clone(),
        };
        let text = serde_json::to_string(&stored).map_err(|e| Error::Io(e.to_string()))?;
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir)?;
        tmp.write_all(text.as_bytes())?;
        tmp.as_file().sync_all()?;
        tmp.persist(&target).map_err(|e| Error::Io(e.to_string()))?;
        Ok(())
    }
}
