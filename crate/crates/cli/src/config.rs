//! Optional TOML configuration; command-line flags take precedence.

use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::CliError;

#[derive(Debug, Clone, Default, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub json: Option<bool>,
    pub cache: Option<PathBuf>,
    pub workers: Option<usize>,
    pub bound: Option<usize>,
    pub node_budget: Option<u64>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::usage(format!("{}: {e}", path.display())))?;
        toml::from_str(&text).map_err(|e| CliError::usage(format!("{}: {e}", path.display())))
    }
}

/// Effective settings after merging flags over the file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Settings {
    pub json: bool,
    pub cache: Option<PathBuf>,
    pub workers: usize,
    pub bound: usize,
    pub node_budget: u64,
}

impl Settings {
    pub fn merge(
        file: FileConfig,
        json: bool,
        cache: Option<PathBuf>,
        workers: Option<usize>,
        bound: Option<usize>,
    ) -> Result<Self, CliError> {
        let workers = workers.or(file.workers).unwrap_or(1);
        if workers == 0 {
            return Err(CliError::usage("--workers must be at least 1"));
        }
        Ok(Settings {
            json: json || file.json.unwrap_or(false),
            cache: cache.or(file.cache),
            workers,
            bound: bound
                .or(file.bound)
                .unwrap_or(genus_core::bqf::DEFAULT_MAX_CLASS_NUMBER),
            node_budget: file
                .node_budget
                .unwrap_or(genus_core::nodesets::DEFAULT_NODE_BUDGET),
        })
    }
}
