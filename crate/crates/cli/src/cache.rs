//! Append-only census cache: a header line, then one JSON record per line.

use std::collections::BTreeMap;
use std::fs::{File, OpenOptions};
use std::hash::Hasher;
use std::io::{self, BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use fnv::FnvHasher;
use semigroup_census::StratumRow;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const HEADER: &str = "# sgcensus-cache v1";

#[derive(Debug, Error)]
pub enum CacheError {
    #[error("cache {path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("cache {path}: unrecognized header {found:?}")]
    Header { path: PathBuf, found: String },
    #[error("cache {path} line {line}: {reason}")]
    Corrupt { path: PathBuf, line: usize, reason: String },
    #[error("cache {path}: genus {genus} has conflicting rows {stored:?} and {offered:?}")]
    Conflict { path: PathBuf, genus: u32, stored: Vec<u64>, offered: Vec<u64> },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Meta {
    pub version: String,
    /// Wall-clock seconds of the enumeration batch that produced the row.
    pub seconds: f64,
    pub workers: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CensusRecord {
    pub genus: u32,
    pub counts: Vec<u64>,
    pub total: u64,
    /// FNV-1a 64 of the counts as little-endian u64s, in hex.
    pub checksum: String,
    pub meta: Meta,
}

pub fn checksum(counts: &[u64]) -> String {
    let mut h = FnvHasher::default();
    for c in counts {
        h.write(&c.to_le_bytes());
    }
    format!("{:016x}", h.finish())
}

impl CensusRecord {
    pub fn new(row: &StratumRow, seconds: f64, workers: usize) -> Self {
        CensusRecord {
            genus: row.genus,
            counts: row.counts.clone(),
            total: row.total,
            checksum: checksum(&row.counts),
            meta: Meta { version: env!("CARGO_PKG_VERSION").into(), seconds, workers },
        }
    }

    pub fn row(&self) -> StratumRow {
        StratumRow { genus: self.genus, counts: self.counts.clone(), total: self.total }
    }

    fn problem(&self) -> Option<String> {
        if checksum(&self.counts) != self.checksum {
            return Some(format!("checksum mismatch for genus {}", self.genus));
        }
        if self.counts.iter().sum::<u64>() != self.total {
            return Some(format!("counts for genus {} do not sum to {}", self.genus, self.total));
        }
        if self.counts.len() as u32 != 2 * self.genus / 3 + 1 {
            return Some(format!("genus {} has {} strata", self.genus, self.counts.len()));
        }
        None
    }
}

#[derive(Debug)]
pub struct Cache {
    path: PathBuf,
    records: BTreeMap<u32, CensusRecord>,
}

impl Cache {
    /// Loads and validates every record; a missing file is an empty cache.
    pub fn open(path: impl AsRef<Path>) -> Result<Self, CacheError> {
        let path = path.as_ref().to_path_buf();
        let io_err = |source| CacheError::Io { path: path.clone(), source };
        let mut records = BTreeMap::new();
        let file = match File::open(&path) {
            Ok(f) => f,
            Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(Cache { path, records }),
            Err(e) => return Err(io_err(e)),
        };
        let mut lines = BufReader::new(file).lines();
        match lines.next().transpose().map_err(io_err)? {
            None => return Ok(Cache { path, records }),
            Some(h) if h.trim_end() == HEADER => {}
            Some(found) => return Err(CacheError::Header { path, found }),
        }
        for (idx, line) in lines.enumerate() {
            let line = line.map_err(io_err)?;
            let number = idx + 2;
            if line.trim().is_empty() {
                continue;
            }
            let corrupt = |reason: String| CacheError::Corrupt { path: path.clone(), line: number, reason };
            let rec: CensusRecord = serde_json::from_str(&line).map_err(|e| corrupt(e.to_string()))?;
            if let Some(reason) = rec.problem() {
                return Err(corrupt(reason));
            }
            if let Some(prev) = records.get(&rec.genus) {
                let prev: &CensusRecord = prev;
                if prev.counts != rec.counts {
                    return Err(CacheError::Conflict {
                        path: path.clone(),
                        genus: rec.genus,
                        stored: prev.counts.clone(),
                        offered: rec.counts,
                    });
                }
                continue;
            }
            records.insert(rec.genus, rec);
        }
        Ok(Cache { path, records })
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn get(&self, genus: u32) -> Option<&CensusRecord> {
        self.records.get(&genus)
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    /// Rows `0..=max_genus` if all of them are cached.
    pub fn rows_up_to(&self, max_genus: u32) -> Option<Vec<StratumRow>> {
        (0..=max_genus).map(|g| self.get(g).map(CensusRecord::row)).collect()
    }

    /// Appends a record unless an identical row is already stored.
    pub fn insert(&mut self, rec: CensusRecord) -> Result<bool, CacheError> {
        if let Some(prev) = self.records.get(&rec.genus) {
            if prev.counts == rec.counts {
                return Ok(false);
            }
            return Err(CacheError::Conflict {
                path: self.path.clone(),
                genus: rec.genus,
                stored: prev.counts.clone(),
                offered: rec.counts,
            });
        }
        let io_err = |source| CacheError::Io { path: self.path.clone(), source };
        let fresh = std::fs::metadata(&self.path).map_or(true, |m| m.len() == 0);
        let mut file = OpenOptions::new().create(true).append(true).open(&self.path).map_err(io_err)?;
        let mut text = if fresh { format!("{HEADER}\n") } else { String::new() };
        text.push_str(&serde_json::to_string(&rec).expect("record serializes"));
        text.push('\n');
        file.write_all(text.as_bytes()).map_err(io_err)?;
        self.records.insert(rec.genus, rec);
        Ok(true)
    }
}
