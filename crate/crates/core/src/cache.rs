//! Append-only JSON-lines store of computed group records.
//!
//! Each line is one [`CacheRecord`] keyed by its canonical descriptor; when a
//! key occurs more than once the last line wins. Records written under a
//! different schema version are ignored. A damaged line is skipped with a
//! warning, and a file that cannot be read at all degrades to running
//! without a cache, so the cache can only ever cost a recomputation.

use std::collections::{BTreeMap, HashMap};
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::alpha::AlphaValue;
use crate::census::{census_from_profile, is_nilpotent, order_profile};
use crate::descriptor::Descriptor;
use crate::error::{GroupError, Result};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheRecord {
    pub schema_version: u32,
    pub descriptor: String,
    pub order: u64,
    /// Element order -> number of elements of that order.
    pub order_profile: BTreeMap<u64, u64>,
    pub l1: u64,
    pub alpha_num: String,
    pub alpha_den: String,
    pub nilpotent: bool,
    pub in_c: bool,
}

impl CacheRecord {
    pub fn alpha(&self) -> Result<AlphaValue> {
        format!("{}/{}", self.alpha_num, self.alpha_den)
            .parse()
            .map_err(|_| {
                GroupError::InvalidParameter(format!("bad ratio in record for {}", self.descriptor))
            })
    }
}

/// Compute a fresh record by exhaustive census.
pub fn compute_record(descriptor: &Descriptor) -> Result<CacheRecord> {
    let g = descriptor.build()?;
    let profile = order_profile(&g)?;
    let census = census_from_profile(&profile)?;
    let nilpotent = is_nilpotent(&g)?;
    Ok(CacheRecord {
        schema_version: SCHEMA_VERSION,
        descriptor: descriptor.canonical_string(),
        order: g.order(),
        order_profile: profile.counts.clone(),
        l1: census.l1,
        alpha_num: census.alpha.numerator().to_string(),
        alpha_den: census.alpha.denominator().to_string(),
        nilpotent,
        in_c: nilpotent && census.alpha == AlphaValue::three_quarters(),
    })
}

/// Outcome of re-deriving a sample of stored records.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Revalidation {
    pub stored: usize,
    pub checked: usize,
    pub mismatches: Vec<String>,
}

pub struct Cache {
    path: Option<PathBuf>,
    records: HashMap<String, CacheRecord>,
    warnings: Vec<String>,
}

impl Cache {
    /// A cache that never stores anything.
    pub fn disabled() -> Cache {
        Cache {
            path: None,
            records: HashMap::new(),
            warnings: Vec::new(),
        }
    }

    /// Open (or lazily create) the store at `path`. Never fails: problems
    /// are reported through [`Cache::warnings`].
    pub fn open(path: impl AsRef<Path>) -> Cache {
        let path = path.as_ref().to_path_buf();
        let mut cache = Cache {
            path: Some(path.clone()),
            records: HashMap::new(),
            warnings: Vec::new(),
        };
        let file = match File::open(&path) {
            Ok(f) => f,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return cache,
            Err(e) => {
                cache.warnings.push(format!(
                    "cache {} unreadable ({e}); running without cache",
                    path.display()
                ));
                cache.path = None;
                return cache;
            }
        };
        for (lineno, line) in BufReader::new(file).lines().enumerate() {
            let line = match line {
                Ok(l) => l,
                Err(e) => {
                    cache.warnings.push(format!(
                        "cache {} unreadable ({e}); running without cache",
                        path.display()
                    ));
                    cache.path = None;
                    cache.records.clear();
                    return cache;
                }
            };
            if line.trim().is_empty() {
                continue;
            }
            match serde_json::from_str::<CacheRecord>(&line) {
                Ok(r) if r.schema_version == SCHEMA_VERSION => {
                    cache.records.insert(r.descriptor.clone(), r);
                }
                Ok(_) => {}
                Err(e) => cache.warnings.push(format!(
                    "{}:{}: skipping corrupt record ({e})",
                    path.display(),
                    lineno + 1
                )),
            }
        }
        cache
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn get(&self, descriptor: &Descriptor) -> Option<&CacheRecord> {
        self.records.get(&descriptor.canonical_string())
    }

    /// Store a record, appending it to the file. A write failure disables
    /// persistence for the rest of the session.
    pub fn put(&mut self, record: CacheRecord) {
        if let Some(path) = &self.path {
            let written = OpenOptions::new()
                .create(true)
                .append(true)
                .open(path)
                .and_then(|mut f| {
                    let line = serde_json::to_string(&record).map_err(std::io::Error::other)?;
                    writeln!(f, "{line}")
                });
            if let Err(e) = written {
                self.warnings.push(format!(
                    "cache {} not writable ({e}); running without cache",
                    path.display()
                ));
                self.path = None;
            }
        }
        self.records.insert(record.descriptor.clone(), record);
    }

    /// Look up `descriptor`, computing and storing the record on a miss.
    pub fn get_or_compute(&mut self, descriptor: &Descriptor) -> Result<CacheRecord> {
        if let Some(r) = self.get(descriptor) {
            return Ok(r.clone());
        }
        let r = compute_record(descriptor)?;
        self.put(r.clone());
        Ok(r)
    }

    /// Recompute a deterministic 5% sample (at least one record) and report
    /// the descriptors whose stored values disagree.
    pub fn revalidate(&self) -> Revalidation {
        let mut keys: Vec<&String> = self.records.keys().collect();
        keys.sort();
        if keys.is_empty() {
            return Revalidation::default();
        }
        let want = keys.len().div_ceil(20).max(1);
        let step = keys.len() / want;
        let mut out = Revalidation {
            stored: keys.len(),
            ..Revalidation::default()
        };
        for key in keys.into_iter().step_by(step.max(1)).take(want) {
            out.checked += 1;
            let stored = &self.records[key];
            let fresh = key
                .parse::<Descriptor>()
                .map_err(|e| GroupError::InvalidParameter(e.to_string()))
                .and_then(|d| compute_record(&d));
            match fresh {
                Ok(r) if &r == stored => {}
                Ok(_) => out.mismatches.push(key.clone()),
                Err(e) => out.mismatches.push(format!("{key} ({e})")),
            }
        }
        out
    }
}
