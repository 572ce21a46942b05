//! Optional TOML config file. Keys mirror the command-line flags (with `_`
//! for `-`); a flag given on the command line always wins.

use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::error::CliError;
use crate::report::parse_set;

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(untagged)]
pub enum SetSpec {
    List(Vec<i64>),
    Text(String),
}

impl SetSpec {
    pub fn elements(&self) -> Result<Vec<i64>, CliError> {
        match self {
            SetSpec::List(v) => Ok(v.clone()),
            SetSpec::Text(t) => parse_set(t),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(untagged)]
pub enum RangeSpec {
    Single(usize),
    Text(String),
}

impl RangeSpec {
    pub fn bounds(&self) -> Result<(usize, usize), CliError> {
        match self {
            RangeSpec::Single(n) => Ok((*n, *n)),
            RangeSpec::Text(t) => parse_range(t),
        }
    }
}

/// `"4"`, `"2..6"` or `"2-6"` (inclusive).
pub fn parse_range(text: &str) -> Result<(usize, usize), CliError> {
    let bad = || CliError::Config(format!("bad n range {text:?}"));
    let parts: Vec<&str> = if text.contains("..") {
        text.split("..").collect()
    } else {
        text.split('-').collect()
    };
    let nums: Vec<usize> = parts
        .iter()
        .map(|p| p.trim().trim_start_matches('=').parse().map_err(|_| bad()))
        .collect::<Result<_, _>>()?;
    match nums.as_slice() {
        [n] => Ok((*n, *n)),
        [lo, hi] => Ok((*lo, *hi)),
        _ => Err(bad()),
    }
}

#[derive(Clone, Debug, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub set: Option<SetSpec>,
    pub json: Option<bool>,
    pub period_bound: Option<u64>,
    pub period_limit: Option<u64>,
    pub denominator_cap: Option<u64>,
    pub construct: Option<bool>,
    pub search: Option<bool>,
    pub n: Option<RangeSpec>,
    pub max: Option<u64>,
    pub experiment: Option<String>,
    pub workers: Option<usize>,
    pub spectra_limit: Option<usize>,
    pub out: Option<PathBuf>,
    pub csv: Option<PathBuf>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        toml::from_str(text).map_err(|e| CliError::Config(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("4").unwrap(), (4, 4));
        assert_eq!(parse_range("2..6").unwrap(), (2, 6));
        assert_eq!(parse_range("2..=6").unwrap(), (2, 6));
        assert_eq!(parse_range("2-6").unwrap(), (2, 6));
        assert!(parse_range("a").is_err());
    }

    #[test]
    fn file_forms() {
        let c = FileConfig::parse("set = [0, 1, 6, 7]\nn = \"2..6\"\nmax = 12\nexperiment = \"cm-crosscheck\"").unwrap();
        assert_eq!(c.set.unwrap().elements().unwrap(), vec![0, 1, 6, 7]);
        assert_eq!(c.n.unwrap().bounds().unwrap(), (2, 6));
        let c = FileConfig::parse("set = \"0,2\"\nn = 3").unwrap();
        assert_eq!(c.set.unwrap().elements().unwrap(), vec![0, 2]);
        assert_eq!(c.n.unwrap().bounds().unwrap(), (3, 3));
        assert!(FileConfig::parse("colour = 1").is_err());
    }
}
