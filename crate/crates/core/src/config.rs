//! Run configuration: applicability domain, sort policy and fuel.
//!
//! Config files are flat `key=value` lines; `#` starts a comment. Keys are
//! `domain` (`omega`, `empty` or `set:0,1,...`), `sorts` (`succ` or
//! `table:FILE`) and `fuel`. A sort table file lists `s=next` pairs in the
//! same format.

use std::collections::BTreeMap;
use std::path::Path;

use thiserror::Error;

use crate::domain::ApplicabilityDomain;
use crate::term::SortPolicy;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("line {line}: expected key=value")]
    Syntax { line: usize },
    #[error("unknown key `{0}`")]
    UnknownKey(String),
    #[error("bad value for `{key}`: {value}")]
    BadValue { key: String, value: String },
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Config {
    pub domain: ApplicabilityDomain,
    pub sorts: SortPolicy,
    /// `None` means the default budget for each closure.
    pub fuel: Option<u64>,
}

impl Default for Config {
    fn default() -> Config {
        Config { domain: ApplicabilityDomain::Omega, sorts: SortPolicy::Successor, fuel: None }
    }
}

fn pairs(text: &str) -> Result<Vec<(String, String)>, ConfigError> {
    let mut out = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line.split_once('=').ok_or(ConfigError::Syntax { line: n + 1 })?;
        out.push((k.trim().to_string(), v.trim().to_string()));
    }
    Ok(out)
}

fn read(path: &Path) -> Result<String, ConfigError> {
    std::fs::read_to_string(path).map_err(|source| ConfigError::Io { path: path.display().to_string(), source })
}

/// Parses the contents of a sort table file.
pub fn parse_sort_table(text: &str) -> Result<SortPolicy, ConfigError> {
    let mut table = BTreeMap::new();
    for (k, v) in pairs(text)? {
        let bad = || ConfigError::BadValue { key: k.clone(), value: v.clone() };
        let from = k.parse().map_err(|_| bad())?;
        let to = v.parse().map_err(|_| bad())?;
        table.insert(from, to);
    }
    Ok(SortPolicy::Table(table))
}

/// Parses a `--sorts` value. Table files are resolved against `base`.
pub fn parse_sorts(spec: &str, base: &Path) -> Result<SortPolicy, ConfigError> {
    match spec {
        "succ" => Ok(SortPolicy::Successor),
        _ => match spec.strip_prefix("table:") {
            Some(file) => parse_sort_table(&read(&base.join(file))?),
            None => Err(ConfigError::BadValue { key: "sorts".into(), value: spec.into() }),
        },
    }
}

impl Config {
    /// Reads a config file; relative table paths are taken from its directory.
    pub fn load(path: &Path) -> Result<Config, ConfigError> {
        let base = path.parent().unwrap_or(Path::new("."));
        Config::parse(&read(path)?, base)
    }

    pub fn parse(text: &str, base: &Path) -> Result<Config, ConfigError> {
        let mut config = Config::default();
        for (k, v) in pairs(text)? {
            let bad = || ConfigError::BadValue { key: k.clone(), value: v.clone() };
            match k.as_str() {
                "domain" => config.domain = v.parse().map_err(|_| bad())?,
                "sorts" => config.sorts = parse_sorts(&v, base)?,
                "fuel" => config.fuel = Some(v.parse().map_err(|_| bad())?),
                _ => return Err(ConfigError::UnknownKey(k)),
            }
        }
        Ok(config)
    }
}
