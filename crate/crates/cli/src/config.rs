//! `key = value` configuration files. Keys are the long flag names, with
//! either `-` or `_`; `#` starts a comment.

use std::collections::BTreeMap;
use std::path::Path;

#[derive(Debug, Default, Clone, PartialEq)]
pub struct ConfigFile {
    entries: BTreeMap<String, String>,
}

fn normalize(key: &str) -> String {
    key.trim().trim_start_matches("--").replace('_', "-").to_ascii_lowercase()
}

impl ConfigFile {
    pub fn parse(text: &str) -> Result<Self, String> {
        let mut entries = BTreeMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| format!("line {}: expected 'key = value', got '{raw}'", lineno + 1))?;
            let key = normalize(key);
            if key.is_empty() {
                return Err(format!("line {}: empty key", lineno + 1));
            }
            let value = value.trim().trim_matches('"').to_string();
            if entries.insert(key.clone(), value).is_some() {
                return Err(format!("line {}: duplicate key '{key}'", lineno + 1));
            }
        }
        Ok(Self { entries })
    }

    pub fn load(path: &Path) -> Result<Self, String> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
        Self::parse(&text).map_err(|e| format!("{}: {e}", path.display()))
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.get(&normalize(key)).map(String::as_str)
    }

    /// Keys not in `known`, for error reporting.
    pub fn unknown_keys(&self, known: &[&str]) -> Vec<String> {
        self.entries
            .keys()
            .filter(|k| !known.iter().any(|n| normalize(n) == **k))
            .cloned()
            .collect()
    }

    pub fn flag(&self, key: &str) -> Result<Option<bool>, String> {
        match self.get(key) {
            None => Ok(None),
            Some("true" | "yes" | "1" | "on") => Ok(Some(true)),
            Some("false" | "no" | "0" | "off") => Ok(Some(false)),
            Some(other) => Err(format!("config key '{key}': expected a boolean, got '{other}'")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_lines() {
        let c = ConfigFile::parse("# run\ncase = theorem\nqmc_count=4096 # points\n\n--seed = 7\ntimes = yes\n").unwrap();
        assert_eq!(c.get("case"), Some("theorem"));
        assert_eq!(c.get("qmc-count"), Some("4096"));
        assert_eq!(c.get("seed"), Some("7"));
        assert_eq!(c.flag("times"), Ok(Some(true)));
        assert_eq!(c.flag("sequential"), Ok(None));
        assert_eq!(c.unknown_keys(&["case", "qmc-count", "seed", "times"]), Vec::<String>::new());
        assert_eq!(c.unknown_keys(&["case"]).len(), 3);
    }

    #[test]
    fn rejects_garbage() {
        assert!(ConfigFile::parse("case theorem").is_err());
        assert!(ConfigFile::parse("= 3").is_err());
        assert!(ConfigFile::parse("k = 1\nk = 2").is_err());
        assert!(ConfigFile::parse("times = maybe").unwrap().flag("times").is_err());
    }
}
