//! On-disk cache of singular vectors, keyed by `(c, h, grade)`.
//!
//! The file is a JSON array of entries. Loading seeds the in-process memo;
//! saving merges the memo in without ever replacing an existing entry, and
//! swaps the file atomically so readers see either the old or new version.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};
use virasoro_fusion::algebra::Rational;
use virasoro_fusion::verma::{memo_seed, memo_snapshot, HighestWeightParams, VermaVector};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CacheKey {
    pub c: Rational,
    pub h: Rational,
    pub grade: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheEntry {
    pub key: CacheKey,
    pub value: VermaVector,
    pub schema_version: u32,
}

#[derive(Debug, thiserror::Error)]
pub enum CacheError {
    #[error("cannot read cache {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("cache {path} is not a valid cache file: {reason}")]
    Corrupt { path: String, reason: String },
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> CacheError + '_ {
    move |source| CacheError::Io {
        path: path.display().to_string(),
        source,
    }
}

/// Reads a cache file; a missing file is an empty cache.
pub fn read_entries(path: &Path) -> Result<Vec<CacheEntry>, CacheError> {
    let text = match fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(Vec::new()),
        Err(e) => return Err(io_err(path)(e)),
    };
    let corrupt = |reason: String| CacheError::Corrupt {
        path: path.display().to_string(),
        reason,
    };
    let entries: Vec<CacheEntry> = serde_json::from_str(&text).map_err(|e| corrupt(e.to_string()))?;
    for e in &entries {
        if e.schema_version != SCHEMA_VERSION {
            return Err(corrupt(format!("unsupported schema_version {}", e.schema_version)));
        }
        let v = &e.value;
        if v.params.c != e.key.c || v.params.h != e.key.h || v.grade() != Some(e.key.grade) {
            return Err(corrupt(format!(
                "entry (c={}, h={}, grade={}) holds a mismatched vector",
                e.key.c, e.key.h, e.key.grade
            )));
        }
    }
    Ok(entries)
}

/// Writes `entries` atomically (temp file in the same directory, then rename).
pub fn write_entries(path: &Path, entries: &[CacheEntry]) -> Result<(), CacheError> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io_err(path))?;
    let body = serde_json::to_string_pretty(entries).expect("cache entries serialize");
    tmp.write_all(body.as_bytes()).map_err(io_err(path))?;
    tmp.write_all(b"\n").map_err(io_err(path))?;
    tmp.persist(path).map_err(|e| io_err(path)(e.error))?;
    Ok(())
}

/// Seeds the memo from `entries`.
pub fn seed(entries: &[CacheEntry]) {
    for e in entries {
        let params = HighestWeightParams::new(e.key.c.clone(), e.key.h.clone());
        memo_seed(&params, e.key.grade, Some(e.value.clone()));
    }
}

/// Existing entries plus everything new in the memo, in key order.
pub fn merged_with_memo(existing: &[CacheEntry]) -> Vec<CacheEntry> {
    let mut all: BTreeMap<CacheKey, CacheEntry> = existing
        .iter()
        .map(|e| (e.key.clone(), e.clone()))
        .collect();
    for (params, grade, value) in memo_snapshot() {
        let key = CacheKey {
            c: params.c,
            h: params.h,
            grade,
        };
        all.entry(key.clone()).or_insert(CacheEntry {
            key,
            value,
            schema_version: SCHEMA_VERSION,
        });
    }
    all.into_values().collect()
}
