//! Flag values merged over an optional `key=value` config file, plus defaults.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use hardy_core::Error as CoreError;

#[derive(Debug)]
pub enum CliError {
    /// Bad flags, config or parameters: exit 2.
    Usage(String),
    /// A check failed or a verdict was inconclusive: exit 3.
    Failed(String),
    /// A symbol was rejected for aliasing: exit 4.
    Aliasing(String),
    Io(std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Failed(_) => 3,
            CliError::Aliasing(_) => 4,
            CliError::Io(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Failed(m) => write!(f, "failed: {m}"),
            CliError::Aliasing(m) => write!(f, "aliasing rejection: {m}"),
            CliError::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Io(e.into())
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::Aliasing { .. } => CliError::Aliasing(e.to_string()),
            CoreError::ModelMismatch { .. }
            | CoreError::LengthMismatch { .. }
            | CoreError::NonFinite(_)
            | CoreError::BasisMismatch { .. }
            | CoreError::NegativeSpectrum { .. } => CliError::Failed(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

/// Effective configuration of one run, echoed into every output.
#[derive(Clone, Debug)]
pub struct Settings {
    command: &'static str,
    values: BTreeMap<String, String>,
}

impl Settings {
    /// Flags win over the config file, which wins over `defaults`.
    /// Config keys must be among the command's flags.
    pub fn resolve(
        command: &'static str,
        flags: Vec<(&'static str, Option<String>)>,
        config: Option<&Path>,
        defaults: &[(&'static str, &str)],
    ) -> CliResult<Self> {
        let known: Vec<&str> = flags.iter().map(|(k, _)| *k).collect();
        let mut values = BTreeMap::new();
        for (key, value) in defaults {
            values.insert(key.to_string(), value.to_string());
        }
        if let Some(path) = config {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
            for (key, value) in parse_config(&text)? {
                if !known.contains(&key.as_str()) {
                    return Err(CliError::Usage(format!("unknown config key `{key}`")));
                }
                values.insert(key, value);
            }
        }
        for (key, value) in flags {
            if let Some(value) = value {
                values.insert(key.to_string(), value);
            }
        }
        Ok(Self { command, values })
    }

    pub fn raw(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(String::as_str)
    }

    pub fn get<T: FromStr>(&self, key: &str) -> CliResult<T>
    where
        T::Err: fmt::Display,
    {
        let raw = self
            .raw(key)
            .ok_or_else(|| CliError::Usage(format!("missing `--{key}`")))?;
        raw.parse()
            .map_err(|e| CliError::Usage(format!("bad `--{key}` value `{raw}`: {e}")))
    }

    pub fn get_opt<T: FromStr>(&self, key: &str) -> CliResult<Option<T>>
    where
        T::Err: fmt::Display,
    {
        match self.raw(key) {
            None => Ok(None),
            Some(_) => self.get(key).map(Some),
        }
    }

    /// Comma-separated list; the empty string is the empty list.
    pub fn get_list<T: FromStr>(&self, key: &str) -> CliResult<Vec<T>>
    where
        T::Err: fmt::Display,
    {
        let raw = self.raw(key).unwrap_or("");
        raw.split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|s| {
                s.parse()
                    .map_err(|e| CliError::Usage(format!("bad `--{key}` entry `{s}`: {e}")))
            })
            .collect()
    }

    /// `command=... key=value ...` with keys sorted; the output path and
    /// config file are left out so that runs differing only in them compare equal.
    pub fn echo(&self) -> String {
        let mut parts = vec![format!("command={}", self.command)];
        parts.extend(
            self.values
                .iter()
                .filter(|(k, _)| !matches!(k.as_str(), "out" | "config"))
                .map(|(k, v)| format!("{k}={v}")),
        );
        parts.join(" ")
    }

    pub fn as_json(&self) -> serde_json::Value {
        let mut map = serde_json::Map::new();
        map.insert("command".into(), self.command.into());
        for (k, v) in &self.values {
            if !matches!(k.as_str(), "out" | "config") {
                map.insert(k.clone(), v.clone().into());
            }
        }
        serde_json::Value::Object(map)
    }
}

/// `key=value` per line; blank lines and `#` comments are skipped.
fn parse_config(text: &str) -> CliResult<Vec<(String, String)>> {
    text.lines()
        .map(str::trim)
        .enumerate()
        .filter(|(_, line)| !line.is_empty() && !line.starts_with('#'))
        .map(|(n, line)| {
            line.split_once('=')
                .map(|(k, v)| (k.trim().to_string(), v.trim().to_string()))
                .ok_or_else(|| CliError::Usage(format!("config line {}: expected key=value", n + 1)))
        })
        .collect()
}
