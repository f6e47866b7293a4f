//! The flat `family:key=value,key=value` form shared by model and symbol specs.

use crate::error::{Error, Result};

pub(crate) struct Params<'a> {
    input: &'a str,
    pub family: &'a str,
    entries: Vec<(&'a str, &'a str, bool)>,
}

impl<'a> Params<'a> {
    pub fn parse(input: &'a str) -> Result<Self> {
        let (family, rest) = input
            .split_once(':')
            .ok_or_else(|| parse_error(input, "missing `family:` prefix"))?;
        let family = family.trim();
        if family.is_empty() {
            return Err(parse_error(input, "empty family name"));
        }
        let mut entries = Vec::new();
        for item in rest.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (key, value) = item
                .split_once('=')
                .ok_or_else(|| parse_error(input, &format!("`{item}` is not key=value")))?;
            let key = key.trim();
            if entries.iter().any(|(k, _, _)| *k == key) {
                return Err(parse_error(input, &format!("duplicate key `{key}`")));
            }
            entries.push((key, value.trim(), false));
        }
        Ok(Self {
            input,
            family,
            entries,
        })
    }

    pub fn take<V: std::str::FromStr>(&mut self, key: &str) -> Result<Option<V>> {
        let input = self.input;
        match self.entries.iter_mut().find(|(k, _, _)| *k == key) {
            None => Ok(None),
            Some(entry) => {
                entry.2 = true;
                entry
                    .1
                    .parse()
                    .map(Some)
                    .map_err(|_| parse_error(input, &format!("bad value for `{key}`")))
            }
        }
    }

    pub fn require<V: std::str::FromStr>(&mut self, key: &str) -> Result<V> {
        self.take(key)?
            .ok_or_else(|| parse_error(self.input, &format!("missing `{key}`")))
    }

    /// Keys not consumed yet, in input order.
    pub fn remaining(&self) -> impl Iterator<Item = (&'a str, &'a str)> + '_ {
        self.entries
            .iter()
            .filter(|(_, _, used)| !used)
            .map(|(k, v, _)| (*k, *v))
    }

    pub fn mark_used(&mut self, key: &str) {
        if let Some(entry) = self.entries.iter_mut().find(|(k, _, _)| *k == key) {
            entry.2 = true;
        }
    }

    pub fn finish(self) -> Result<()> {
        match self.remaining().next() {
            None => Ok(()),
            Some((key, _)) => Err(parse_error(self.input, &format!("unknown key `{key}`"))),
        }
    }

    pub fn error(&self, reason: &str) -> Error {
        parse_error(self.input, reason)
    }
}

pub(crate) fn parse_error(input: &str, reason: &str) -> Error {
    Error::Parse {
        input: input.to_string(),
        reason: reason.to_string(),
    }
}
