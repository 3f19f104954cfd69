//! Flat `key = value` config files. Flags given on the command line win
//! over file values.

use std::collections::BTreeMap;
use std::path::Path;

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FileConfig {
    pub values: BTreeMap<String, String>,
}

impl FileConfig {
    pub fn parse(text: &str) -> Result<Self, String> {
        let mut values = BTreeMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(format!("line {}: expected 'key = value', found '{line}'", lineno + 1));
            };
            values.insert(key.trim().to_string(), value.trim().to_string());
        }
        Ok(FileConfig { values })
    }

    pub fn load(path: &Path) -> Result<Self, String> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
        Self::parse(&text)
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(String::as_str)
    }

    pub fn get_parsed<T: std::str::FromStr>(&self, key: &str) -> Result<Option<T>, String>
    where
        T::Err: std::fmt::Display,
    {
        match self.get(key) {
            None => Ok(None),
            Some(s) => s
                .parse::<T>()
                .map(Some)
                .map_err(|e| format!("config key '{key}': {e}")),
        }
    }
}

/// CLI flag wins over the config file, which wins over the default.
pub fn resolve<T>(flag: Option<T>, file: Option<T>, default: T) -> T {
    flag.or(file).unwrap_or(default)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_key_values_and_comments() {
        let c = FileConfig::parse("seed = 7\n# comment\nvars = x,y  # trailing\n\nwindow=12\n").unwrap();
        assert_eq!(c.get("seed"), Some("7"));
        assert_eq!(c.get("vars"), Some("x,y"));
        assert_eq!(c.get_parsed::<u64>("window").unwrap(), Some(12));
        assert_eq!(c.get("missing"), None);
    }

    #[test]
    fn rejects_bad_lines() {
        assert!(FileConfig::parse("just words\n").is_err());
        assert!(FileConfig::parse("seed = x\n")
            .unwrap()
            .get_parsed::<u64>("seed")
            .is_err());
    }

    #[test]
    fn flags_win() {
        assert_eq!(resolve(Some(1), Some(2), 3), 1);
        assert_eq!(resolve(None, Some(2), 3), 2);
        assert_eq!(resolve::<u64>(None, None, 3), 3);
    }
}
