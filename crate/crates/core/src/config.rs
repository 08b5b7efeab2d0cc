// Copyright 2026 The stark-qsde Authors
// SPDX-License-Identifier: Apache-2.0

//! Flat run configuration.
//!
//! A config file is TOML restricted to dotted scalar keys:
//!
//! ```text
//! schema = "qsde-stark-config v1"
//! model.chi = 1.0
//! model.eta = 3.141592653589793
//! levels.1.freq = 0.0
//! ```
//!
//! Tables are flattened, so `[model]` sections and dotted keys are
//! equivalent. The `schema` key is mandatory. Environment variables are never
//! consulted.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use thiserror::Error;
use toml::Value;

pub const CONFIG_SCHEMA: &str = "qsde-stark-config v1";

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ConfigError {
    #[error("cannot read {path}: {reason}")]
    Io { path: String, reason: String },
    #[error("malformed config: {0}")]
    Syntax(String),
    #[error("missing required key `schema` (expected \"{CONFIG_SCHEMA}\")")]
    MissingSchema,
    #[error("unsupported config schema {found:?} (expected \"{CONFIG_SCHEMA}\")")]
    UnsupportedSchema { found: String },
    #[error("missing key `{0}`")]
    MissingKey(String),
    #[error("key `{key}`: expected {expected}, got {found}")]
    InvalidValue {
        key: String,
        expected: &'static str,
        found: String,
    },
    #[error("key `{0}` holds an array; only scalar values are allowed")]
    NotScalar(String),
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Config {
    entries: BTreeMap<String, Value>,
}

impl Config {
    /// Empty config; [`Config::to_text`] adds the schema line.
    pub fn new() -> Self {
        Self::default()
    }

    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let table: toml::Table = text.parse().map_err(|e: toml::de::Error| {
            ConfigError::Syntax(e.message().to_string())
        })?;
        let mut entries = BTreeMap::new();
        flatten("", &Value::Table(table), &mut entries)?;
        match entries.remove("schema") {
            None => Err(ConfigError::MissingSchema),
            Some(Value::String(s)) if s == CONFIG_SCHEMA => Ok(Self { entries }),
            Some(other) => Err(ConfigError::UnsupportedSchema {
                found: describe(&other),
            }),
        }
    }

    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|e| ConfigError::Io {
            path: path.display().to_string(),
            reason: e.to_string(),
        })?;
        Self::parse(&text)
    }

    pub fn contains(&self, key: &str) -> bool {
        self.entries.contains_key(key)
    }

    pub fn keys(&self) -> impl Iterator<Item = &str> {
        self.entries.keys().map(String::as_str)
    }

    pub fn set(&mut self, key: &str, value: impl Into<Value>) {
        self.entries.insert(key.to_string(), value.into());
    }

    /// Seeds are u64; values that do not fit TOML's i64 are kept as strings.
    pub fn set_u64(&mut self, key: &str, value: u64) {
        match i64::try_from(value) {
            Ok(v) => self.set(key, v),
            Err(_) => self.set(key, value.to_string()),
        }
    }

    fn require(&self, key: &str) -> Result<&Value, ConfigError> {
        self.entries
            .get(key)
            .ok_or_else(|| ConfigError::MissingKey(key.to_string()))
    }

    fn invalid(key: &str, expected: &'static str, found: &Value) -> ConfigError {
        ConfigError::InvalidValue {
            key: key.to_string(),
            expected,
            found: describe(found),
        }
    }

    /// Floats and integers are both accepted.
    pub fn f64(&self, key: &str) -> Result<f64, ConfigError> {
        match self.require(key)? {
            Value::Float(x) => Ok(*x),
            Value::Integer(i) => Ok(*i as f64),
            other => Err(Self::invalid(key, "a number", other)),
        }
    }

    pub fn usize(&self, key: &str) -> Result<usize, ConfigError> {
        match self.require(key)? {
            Value::Integer(i) if *i >= 0 => Ok(*i as usize),
            other => Err(Self::invalid(key, "a non-negative integer", other)),
        }
    }

    pub fn u64(&self, key: &str) -> Result<u64, ConfigError> {
        match self.require(key)? {
            Value::Integer(i) if *i >= 0 => Ok(*i as u64),
            Value::String(s) => s
                .parse()
                .map_err(|_| Self::invalid(key, "an unsigned 64-bit integer", &Value::String(s.clone()))),
            other => Err(Self::invalid(key, "an unsigned 64-bit integer", other)),
        }
    }

    pub fn bool(&self, key: &str) -> Result<bool, ConfigError> {
        match self.require(key)? {
            Value::Boolean(b) => Ok(*b),
            other => Err(Self::invalid(key, "true or false", other)),
        }
    }

    pub fn str(&self, key: &str) -> Result<&str, ConfigError> {
        match self.require(key)? {
            Value::String(s) => Ok(s),
            other => Err(Self::invalid(key, "a string", other)),
        }
    }

    pub fn f64_or(&self, key: &str, default: f64) -> Result<f64, ConfigError> {
        if self.contains(key) {
            self.f64(key)
        } else {
            Ok(default)
        }
    }

    pub fn usize_or(&self, key: &str, default: usize) -> Result<usize, ConfigError> {
        if self.contains(key) {
            self.usize(key)
        } else {
            Ok(default)
        }
    }

    pub fn u64_or(&self, key: &str, default: u64) -> Result<u64, ConfigError> {
        if self.contains(key) {
            self.u64(key)
        } else {
            Ok(default)
        }
    }

    pub fn bool_or(&self, key: &str, default: bool) -> Result<bool, ConfigError> {
        if self.contains(key) {
            self.bool(key)
        } else {
            Ok(default)
        }
    }

    pub fn optional_f64(&self, key: &str) -> Result<Option<f64>, ConfigError> {
        if self.contains(key) {
            self.f64(key).map(Some)
        } else {
            Ok(None)
        }
    }

    /// Serialized form: schema line first, then one `key = value` per line in
    /// key order. Floats are written in shortest round-trip form.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "schema = {}", Value::String(CONFIG_SCHEMA.into()));
        for (key, value) in &self.entries {
            let _ = writeln!(out, "{key} = {value}");
        }
        out
    }
}

fn flatten(prefix: &str, value: &Value, out: &mut BTreeMap<String, Value>) -> Result<(), ConfigError> {
    match value {
        Value::Table(table) => {
            for (k, v) in table {
                let key = if prefix.is_empty() {
                    k.clone()
                } else {
                    format!("{prefix}.{k}")
                };
                flatten(&key, v, out)?;
            }
            Ok(())
        }
        Value::Array(_) => Err(ConfigError::NotScalar(prefix.to_string())),
        scalar => {
            out.insert(prefix.to_string(), scalar.clone());
            Ok(())
        }
    }
}

fn describe(value: &Value) -> String {
    match value {
        Value::String(s) => format!("{s:?}"),
        other => other.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = r#"
schema = "qsde-stark-config v1"
# comment
model.chi = 1
model.eta = 3.141592653589793
levels.1.label = "ground"
[mc]
enabled = true
trajectories = 400
"#;

    #[test]
    fn parses_dotted_and_sectioned_keys() {
        let cfg = Config::parse(SAMPLE).unwrap();
        assert_eq!(cfg.f64("model.chi").unwrap(), 1.0);
        assert_eq!(cfg.f64("model.eta").unwrap(), std::f64::consts::PI);
        assert_eq!(cfg.str("levels.1.label").unwrap(), "ground");
        assert!(cfg.bool("mc.enabled").unwrap());
        assert_eq!(cfg.usize("mc.trajectories").unwrap(), 400);
        assert_eq!(cfg.usize_or("mc.refine", 7).unwrap(), 7);
    }

    #[test]
    fn round_trips_bit_exactly() {
        let mut cfg = Config::parse(SAMPLE).unwrap();
        cfg.set("x.tiny", 1.0e-300 / 3.0);
        cfg.set("x.third", 1.0 / 3.0);
        cfg.set_u64("rng.seed", u64::MAX);
        let back = Config::parse(&cfg.to_text()).unwrap();
        assert_eq!(back, cfg);
        assert_eq!(back.f64("x.third").unwrap().to_bits(), (1.0f64 / 3.0).to_bits());
        assert_eq!(back.u64("rng.seed").unwrap(), u64::MAX);
    }

    #[test]
    fn schema_errors() {
        assert_eq!(Config::parse("a = 1"), Err(ConfigError::MissingSchema));
        assert!(matches!(
            Config::parse("schema = \"qsde-stark-config v9\""),
            Err(ConfigError::UnsupportedSchema { .. })
        ));
        assert!(matches!(Config::parse("schema = "), Err(ConfigError::Syntax(_))));
    }

    #[test]
    fn typed_errors_name_the_key() {
        let cfg = Config::parse(SAMPLE).unwrap();
        assert_eq!(cfg.f64("model.gamma"), Err(ConfigError::MissingKey("model.gamma".into())));
        let err = cfg.usize("model.eta").unwrap_err();
        assert!(err.to_string().contains("model.eta"));
        assert!(cfg.f64("levels.1.label").is_err());
        assert!(matches!(
            Config::parse("schema = \"qsde-stark-config v1\"\nx = [1, 2]"),
            Err(ConfigError::NotScalar(_))
        ));
    }
}
