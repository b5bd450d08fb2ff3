//! INI-style run configuration.
//!
//! Format: `[section]` headers group `key = value` lines; lines whose
//! first non-blank character is `#` or `;` are comments; blank lines are
//! ignored. Values are taken verbatim (trimmed), so they may contain any
//! character including `#`. Keys must be unique within their section and
//! every key must appear under a section header.

use std::collections::BTreeMap;
use std::str::FromStr;

use crate::error::CliError;

#[derive(Debug, Clone)]
struct Entry {
    value: String,
    line: usize,
}

/// Parsed config file plus schema checking and typed access.
#[derive(Debug, Clone, Default)]
pub struct Config {
    sections: BTreeMap<String, BTreeMap<String, Entry>>,
    section_lines: BTreeMap<String, usize>,
}

impl Config {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut cfg = Config::default();
        let mut current: Option<String> = None;
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') || line.starts_with(';') {
                continue;
            }
            if let Some(name) = line.strip_prefix('[') {
                let name = name.strip_suffix(']').ok_or_else(|| {
                    CliError::config(format!("line {line_no}: unterminated section header"))
                })?;
                let name = name.trim();
                if name.is_empty() {
                    return Err(CliError::config(format!(
                        "line {line_no}: empty section name"
                    )));
                }
                if cfg.sections.contains_key(name) {
                    return Err(CliError::config(format!(
                        "line {line_no}: section [{name}] already defined on line {}",
                        cfg.section_lines[name]
                    )));
                }
                cfg.sections.insert(name.to_string(), BTreeMap::new());
                cfg.section_lines.insert(name.to_string(), line_no);
                current = Some(name.to_string());
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(CliError::config(format!(
                    "line {line_no}: expected `key = value`, got `{line}`"
                )));
            };
            let key = key.trim();
            let value = value.trim();
            if key.is_empty() {
                return Err(CliError::config(format!("line {line_no}: empty key")));
            }
            let Some(section) = &current else {
                return Err(CliError::config(format!(
                    "line {line_no}: key `{key}` appears before any [section] header"
                )));
            };
            let entries = cfg.sections.get_mut(section).unwrap();
            if let Some(prev) = entries.get(key) {
                return Err(CliError::config(format!(
                    "line {line_no}: duplicate key `{key}` in [{section}] \
                     (first set on line {})",
                    prev.line
                )));
            }
            entries.insert(
                key.to_string(),
                Entry {
                    value: value.to_string(),
                    line: line_no,
                },
            );
        }
        Ok(cfg)
    }

    /// Reject any section or key outside the subcommand's schema, naming
    /// the offender and its line. Catches typos before any work starts.
    pub fn restrict(&self, allowed: &[(&str, &[&str])]) -> Result<(), CliError> {
        for (section, entries) in &self.sections {
            let Some((_, keys)) = allowed.iter().find(|(s, _)| s == section) else {
                let names: Vec<&str> = allowed.iter().map(|(s, _)| *s).collect();
                return Err(CliError::config(format!(
                    "line {}: section [{section}] is not used by this subcommand \
                     (expected one of: {})",
                    self.section_lines[section],
                    names.join(", ")
                )));
            };
            for (key, entry) in entries {
                if !keys.contains(&key.as_str()) {
                    return Err(CliError::config(format!(
                        "line {}: unknown key `{key}` in [{section}] \
                         (expected one of: {})",
                        entry.line,
                        keys.join(", ")
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn raw(&self, section: &str, key: &str) -> Option<&str> {
        self.sections
            .get(section)
            .and_then(|s| s.get(key))
            .map(|e| e.value.as_str())
    }

    fn typed<T: FromStr>(&self, section: &str, key: &str, what: &str) -> Result<Option<T>, CliError> {
        match self.raw(section, key) {
            None => Ok(None),
            Some(text) => text.parse().map(Some).map_err(|_| {
                CliError::config(format!(
                    "[{section}] {key}: expected {what}, got `{text}`"
                ))
            }),
        }
    }

    pub fn f64(&self, section: &str, key: &str) -> Result<Option<f64>, CliError> {
        self.typed(section, key, "a number")
    }

    pub fn f64_or(&self, section: &str, key: &str, default: f64) -> Result<f64, CliError> {
        Ok(self.f64(section, key)?.unwrap_or(default))
    }

    pub fn require_f64(&self, section: &str, key: &str) -> Result<f64, CliError> {
        self.f64(section, key)?.ok_or_else(|| {
            CliError::config(format!("[{section}] {key} is required"))
        })
    }

    pub fn usize(&self, section: &str, key: &str) -> Result<Option<usize>, CliError> {
        self.typed(section, key, "a nonnegative integer")
    }

    pub fn usize_or(&self, section: &str, key: &str, default: usize) -> Result<usize, CliError> {
        Ok(self.usize(section, key)?.unwrap_or(default))
    }

    pub fn require_usize(&self, section: &str, key: &str) -> Result<usize, CliError> {
        self.usize(section, key)?.ok_or_else(|| {
            CliError::config(format!("[{section}] {key} is required"))
        })
    }

    pub fn u64(&self, section: &str, key: &str) -> Result<Option<u64>, CliError> {
        self.typed(section, key, "a nonnegative integer")
    }

    pub fn str_or<'a>(&'a self, section: &str, key: &str, default: &'a str) -> &'a str {
        self.raw(section, key).unwrap_or(default)
    }

    pub fn require_str(&self, section: &str, key: &str) -> Result<&str, CliError> {
        self.raw(section, key).ok_or_else(|| {
            CliError::config(format!("[{section}] {key} is required"))
        })
    }

    /// One of a fixed set of words, e.g. a method or axis name.
    pub fn choice(
        &self,
        section: &str,
        key: &str,
        options: &[&str],
        default: &str,
    ) -> Result<String, CliError> {
        let value = self.str_or(section, key, default);
        if options.contains(&value) {
            Ok(value.to_string())
        } else {
            Err(CliError::config(format!(
                "[{section}] {key}: expected one of {}, got `{value}`",
                options.join("|")
            )))
        }
    }
}
