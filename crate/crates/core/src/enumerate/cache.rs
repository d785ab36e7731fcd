use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::table::{descent_table, DescentTable};
use crate::error::{Error, Result};
use crate::perm::Sorter;

/// Environment variable naming the cache directory.
pub const CACHE_ENV: &str = "PERMSORT_CACHE_DIR";

/// Bumped whenever the stored layout changes; older entries are ignored.
pub const CACHE_FORMAT_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct Entry {
    version: u32,
    table: DescentTable,
}

/// `$XDG_CACHE_HOME/permsort`, else `$HOME/.cache/permsort`, else a
/// directory under the system temp dir.
pub fn default_cache_dir() -> PathBuf {
    let from_env = |var: &str| std::env::var_os(var).filter(|v| !v.is_empty()).map(PathBuf::from);
    if let Some(xdg) = from_env("XDG_CACHE_HOME") {
        return xdg.join("permsort");
    }
    if let Some(home) = from_env("HOME") {
        return home.join(".cache").join("permsort");
    }
    std::env::temp_dir().join("permsort")
}

/// Explicit flag, then `PERMSORT_CACHE_DIR`, then the platform default.
pub fn resolve_cache_dir(flag: Option<&Path>) -> PathBuf {
    if let Some(dir) = flag {
        return dir.to_path_buf();
    }
    match std::env::var_os(CACHE_ENV) {
        Some(dir) if !dir.is_empty() => PathBuf::from(dir),
        _ => default_cache_dir(),
    }
}

/// Descent tables stored as JSON files, one per `(n, sorter)`. Anything
/// unreadable or from another format version counts as a miss.
#[derive(Clone, Debug)]
pub struct TableCache {
    dir: PathBuf,
}

impl TableCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Self { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path_for(&self, n: usize, sorter: Sorter) -> PathBuf {
        self.dir.join(format!("descent-table-{sorter}-{n}.json"))
    }

    pub fn load(&self, n: usize, sorter: Sorter) -> Option<DescentTable> {
        let text = fs::read_to_string(self.path_for(n, sorter)).ok()?;
        let entry: Entry = serde_json::from_str(&text).ok()?;
        (entry.version == CACHE_FORMAT_VERSION && entry.table.n() == n && entry.table.sorter() == sorter)
            .then_some(entry.table)
    }

    pub fn store(&self, table: &DescentTable) -> Result<()> {
        fs::create_dir_all(&self.dir).map_err(|e| Error::Cache(format!("{}: {e}", self.dir.display())))?;
        let path = self.path_for(table.n(), table.sorter());
        let tmp = path.with_extension(format!("json.{}.tmp", std::process::id()));
        let entry = Entry {
            version: CACHE_FORMAT_VERSION,
            table: table.clone(),
        };
        fs::write(&tmp, serde_json::to_string(&entry)?)?;
        fs::rename(&tmp, &path)?;
        Ok(())
    }

    /// Cached table if present, otherwise computes and stores it. A failed
    /// store is not an error since the cache is only advisory.
    pub fn get_or_compute(&self, n: usize, sorter: Sorter, jobs: usize) -> Result<DescentTable> {
        if let Some(t) = self.load(n, sorter) {
            return Ok(t);
        }
        let table = descent_table(n, sorter, jobs)?;
        let _ = self.store(&table);
        Ok(table)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_invalidation() {
        let dir = tempfile::tempdir().unwrap();
        let cache = TableCache::new(dir.path().join("nested"));
        assert!(cache.load(5, Sorter::Stack).is_none());
        let computed = cache.get_or_compute(5, Sorter::Stack, 2).unwrap();
        assert_eq!(cache.load(5, Sorter::Stack), Some(computed.clone()));
        assert!(cache.load(5, Sorter::Revstack).is_none());

        let path = cache.path_for(5, Sorter::Stack);
        let text = fs::read_to_string(&path).unwrap().replace("\"version\":1", "\"version\":0");
        fs::write(&path, text).unwrap();
        assert!(cache.load(5, Sorter::Stack).is_none());
        fs::write(&path, "not json").unwrap();
        assert_eq!(cache.get_or_compute(5, Sorter::Stack, 1).unwrap(), computed);
        assert!(cache.load(5, Sorter::Stack).is_some());
    }

    #[test]
    fn flag_wins() {
        assert_eq!(resolve_cache_dir(Some(Path::new("/x/y"))), PathBuf::from("/x/y"));
    }
}
