//! Append-only JSONL cache of class groups and genus reports, keyed by `D`.
//!
//! Later lines override earlier ones. Lines that fail to parse or validate
//! (including a truncated last line) are skipped, not fatal.

use std::collections::HashMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use genus_core::bqf::ClassGroup;
use genus_core::genus::GenusReport;
use serde::{Deserialize, Serialize};

pub const CACHE_VERSION: &str = "gaussgenus-cache/1";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheRecord {
    pub version: String,
    #[serde(rename = "D")]
    pub disc: i64,
    pub class_group: ClassGroup,
    pub genus_report: GenusReport,
}

impl CacheRecord {
    pub fn new(class_group: ClassGroup, genus_report: GenusReport) -> Self {
        CacheRecord {
            version: CACHE_VERSION.to_string(),
            disc: class_group.disc,
            class_group,
            genus_report,
        }
    }

    fn is_coherent(&self) -> bool {
        self.version == CACHE_VERSION
            && self.class_group.disc == self.disc
            && self.genus_report.disc == self.disc
    }
}

#[derive(Debug, Default)]
pub struct Cache {
    path: Option<PathBuf>,
    records: HashMap<i64, CacheRecord>,
    appender: Option<Mutex<File>>,
    /// Lines skipped while loading.
    pub rejected: usize,
}

impl Cache {
    /// A cache that stores nothing.
    pub fn disabled() -> Self {
        Self::default()
    }

    pub fn open(path: &Path) -> std::io::Result<Self> {
        let mut cache = Cache {
            path: Some(path.to_path_buf()),
            ..Self::default()
        };
        if path.exists() {
            for line in BufReader::new(File::open(path)?).lines() {
                let line = line?;
                if line.trim().is_empty() {
                    continue;
                }
                match serde_json::from_str::<CacheRecord>(&line) {
                    Ok(rec) if rec.is_coherent() => {
                        cache.records.insert(rec.disc, rec);
                    }
                    _ => cache.rejected += 1,
                }
            }
        }
        let file = OpenOptions::new().create(true).append(true).open(path)?;
        cache.appender = Some(Mutex::new(file));
        Ok(cache)
    }

    pub fn path(&self) -> Option<&Path> {
        self.path.as_deref()
    }

    pub fn get(&self, disc: i64) -> Option<&CacheRecord> {
        self.records.get(&disc)
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    /// Appends one record and flushes, so an interrupted scan keeps
    /// everything written so far. Safe to call from several threads.
    pub fn append(&self, rec: &CacheRecord) -> std::io::Result<()> {
        let Some(appender) = &self.appender else {
            return Ok(());
        };
        let mut line = serde_json::to_string(rec).map_err(std::io::Error::other)?;
        line.push('\n');
        let mut file = appender.lock().expect("cache appender poisoned");
        file.write_all(line.as_bytes())?;
        file.flush()
    }
}
