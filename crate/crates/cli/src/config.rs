//! `key = value` configuration files.
//!
//! One setting per line, `#` starts a comment. Keys are long flag names
//! without the leading dashes (`H = 0.5`, `quad-tol = 1e-8`); a later line
//! replaces an earlier one with the same key.

use std::ffi::OsString;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConfigError {
    #[error("line {line}: expected `key = value`")]
    MissingEquals { line: usize },
    #[error("line {line}: empty key")]
    EmptyKey { line: usize },
    #[error("line {line}: invalid key `{key}`")]
    InvalidKey { line: usize, key: String },
    #[error("line {line}: no value for `{key}`")]
    EmptyValue { line: usize, key: String },
    #[error("line {line}: `{key}` cannot be set from a config file")]
    Forbidden { line: usize, key: String },
}

pub fn parse_config(text: &str) -> Result<Vec<(String, String)>, ConfigError> {
    let mut out: Vec<(String, String)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let (key, value) = body
            .split_once('=')
            .ok_or(ConfigError::MissingEquals { line })?;
        let (key, value) = (key.trim(), value.trim());
        if key.is_empty() {
            return Err(ConfigError::EmptyKey { line });
        }
        let valid = key.chars().all(|c| c.is_ascii_alphanumeric() || c == '-' || c == '_')
            && key.chars().next().is_some_and(|c| c.is_ascii_alphabetic());
        if !valid {
            return Err(ConfigError::InvalidKey {
                line,
                key: key.into(),
            });
        }
        if value.is_empty() {
            return Err(ConfigError::EmptyValue {
                line,
                key: key.into(),
            });
        }
        let key = key.replace('_', "-");
        if key == "config" {
            return Err(ConfigError::Forbidden { line, key });
        }
        out.retain(|(k, _)| *k != key);
        out.push((key, value.into()));
    }
    Ok(out)
}

/// Flags equivalent to the settings, to be placed before the user's own.
pub fn to_flags(settings: &[(String, String)]) -> Vec<OsString> {
    settings
        .iter()
        .map(|(k, v)| OsString::from(format!("--{k}={v}")))
        .collect()
}
