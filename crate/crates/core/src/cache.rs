//! On-disk cache of completed enumerations, one JSON file per `n`.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::enumerate::{enumerate_all, Budget, TheorySet};
use crate::error::{Result, SctError};
use crate::theory::SCTheory;

/// Changes whenever the enumeration could produce different output.
pub const CACHE_VERSION: &str = concat!(env!("CARGO_PKG_VERSION"), "+multiplier-search.1");

/// Environment variable naming the default cache directory.
pub const CACHE_ENV: &str = "SCT_CACHE";

#[derive(Serialize, Deserialize)]
struct CacheFile {
    n: u32,
    complete: bool,
    version: String,
    theories: Vec<SCTheory>,
}

pub fn cache_path(dir: &Path, n: u32) -> PathBuf {
    dir.join(format!("sup-{n}.json"))
}

pub fn env_cache_dir() -> Option<PathBuf> {
    std::env::var_os(CACHE_ENV)
        .filter(|v| !v.is_empty())
        .map(PathBuf::from)
}

/// Reads a cached set; `Ok(None)` when absent, stale or incomplete.
pub fn load(dir: &Path, n: u32) -> Result<Option<TheorySet>> {
    let path = cache_path(dir, n);
    let text = match fs::read_to_string(&path) {
        Ok(t) => t,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
        Err(e) => return Err(SctError::Cache(format!("{}: {e}", path.display()))),
    };
    // Every theory is revalidated on the way in.
    let file: CacheFile = match serde_json::from_str(&text) {
        Ok(f) => f,
        Err(e) => return Err(SctError::Cache(format!("{}: {e}", path.display()))),
    };
    if file.n != n || !file.complete || file.version != CACHE_VERSION {
        return Ok(None);
    }
    TheorySet::new(n, file.theories).map(Some)
}

pub fn store(dir: &Path, set: &TheorySet) -> Result<()> {
    fs::create_dir_all(dir).map_err(|e| SctError::Cache(format!("{}: {e}", dir.display())))?;
    let file = CacheFile {
        n: set.n(),
        complete: true,
        version: CACHE_VERSION.to_string(),
        theories: set.theories().to_vec(),
    };
    let path = cache_path(dir, set.n());
    let tmp = path.with_extension("json.tmp");
    let text = serde_json::to_string(&file).expect("theories serialize");
    fs::write(&tmp, text)
        .and_then(|_| fs::rename(&tmp, &path))
        .map_err(|e| SctError::Cache(format!("{}: {e}", path.display())))
}

/// Enumerates through the cache in `dir`, if any.
pub fn enumerate_cached(n: u32, budget: Option<Budget>, dir: Option<&Path>) -> Result<TheorySet> {
    if let Some(dir) = dir {
        if let Some(set) = load(dir, n)? {
            return Ok(set);
        }
    }
    let set = enumerate_all(n, budget)?;
    if let Some(dir) = dir {
        store(dir, &set)?;
    }
    Ok(set)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_through_disk() {
        let dir = tempfile::tempdir().unwrap();
        assert!(load(dir.path(), 12).unwrap().is_none());
        let fresh = enumerate_cached(12, None, Some(dir.path())).unwrap();
        let text = fs::read_to_string(cache_path(dir.path(), 12)).unwrap();
        assert!(text.starts_with(r#"{"n":12,"complete":true,"version":""#));
        let cached = load(dir.path(), 12).unwrap().unwrap();
        assert_eq!(cached, fresh);
    }

    #[test]
    fn stale_or_corrupt_files() {
        let dir = tempfile::tempdir().unwrap();
        fs::write(
            cache_path(dir.path(), 4),
            r#"{"n":4,"complete":true,"version":"0.0.0","theories":[]}"#,
        )
        .unwrap();
        assert!(load(dir.path(), 4).unwrap().is_none());
        // a non-theory in the file is refused
        fs::write(
            cache_path(dir.path(), 4),
            format!(
                r#"{{"n":4,"complete":true,"version":"{CACHE_VERSION}","theories":[{{"n":4,"blocks":[[0],[1],[2,3]]}}]}}"#
            ),
        )
        .unwrap();
        assert!(matches!(load(dir.path(), 4), Err(SctError::Cache(_))));
    }
}
