use std::collections::BTreeMap;
use std::path::Path;
use std::str::FromStr;

use crate::fail::{Failure, Result};

/// `key = value` defaults. Blank lines and `#` comments are skipped.
#[derive(Debug, Default)]
pub struct Config {
    values: BTreeMap<String, String>,
}

impl Config {
    pub fn load(path: &Path) -> Result<Config> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Failure::usage(format!("cannot read config {}: {e}", path.display())))?;
        Config::parse(&text).map_err(|m| Failure::usage(format!("{}: {m}", path.display())))
    }

    pub fn parse(text: &str) -> std::result::Result<Config, String> {
        let mut values = BTreeMap::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| format!("line {}: expected key = value", i + 1))?;
            values.insert(k.trim().replace('_', "-"), v.trim().to_string());
        }
        Ok(Config { values })
    }

    pub fn get<T: FromStr>(&self, key: &str) -> Result<Option<T>> {
        match self.values.get(key) {
            None => Ok(None),
            Some(v) => v
                .parse()
                .map(Some)
                .map_err(|_| Failure::usage(format!("config key {key}: cannot parse {v:?}"))),
        }
    }

    /// The flag value, else the config value, else `None`.
    pub fn pick<T: FromStr>(&self, flag: Option<T>, key: &str) -> Result<Option<T>> {
        match flag {
            Some(v) => Ok(Some(v)),
            None => self.get(key),
        }
    }

    pub fn or<T: FromStr>(&self, flag: Option<T>, key: &str, default: T) -> Result<T> {
        Ok(self.pick(flag, key)?.unwrap_or(default))
    }

    pub fn flag(&self, set: bool, key: &str) -> Result<bool> {
        Ok(set || self.get::<bool>(key)?.unwrap_or(false))
    }
}
