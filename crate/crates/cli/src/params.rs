//! `--param name=value` assignments, each of which must be consumed exactly once.

use std::collections::{BTreeMap, BTreeSet};

use negativity_core::{Error, Result};

#[derive(Debug, Default)]
pub struct Params {
    values: BTreeMap<String, f64>,
    used: BTreeSet<String>,
}

impl Params {
    pub fn parse(assignments: &[String]) -> Result<Self> {
        let mut values = BTreeMap::new();
        for a in assignments {
            let (name, value) = a
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("parameter `{a}` is not of the form name=value")))?;
            let name = name.trim();
            if name.is_empty() {
                return Err(Error::Config(format!("parameter `{a}` has an empty name")));
            }
            let value: f64 = value
                .trim()
                .parse()
                .map_err(|_| Error::Config(format!("parameter `{name}`: `{value}` is not a number")))?;
            if !value.is_finite() {
                return Err(Error::Config(format!("parameter `{name}` must be finite")));
            }
            if values.insert(name.to_string(), value).is_some() {
                return Err(Error::Config(format!("parameter `{name}` assigned more than once")));
            }
        }
        Ok(Self {
            values,
            used: BTreeSet::new(),
        })
    }

    /// Looks up `scope.name` first, then the unscoped `name`.
    pub fn get(&mut self, scope: Option<&str>, name: &str) -> Option<f64> {
        if let Some(scope) = scope {
            let key = format!("{scope}.{name}");
            if let Some(&v) = self.values.get(&key) {
                self.used.insert(key);
                return Some(v);
            }
        }
        let v = self.values.get(name).copied()?;
        self.used.insert(name.to_string());
        Some(v)
    }

    pub fn require(&mut self, scope: Option<&str>, name: &str, owner: &str) -> Result<f64> {
        self.get(scope, name)
            .ok_or_else(|| Error::Config(format!("{owner} needs parameter `{name}` (use --param {name}=VALUE)")))
    }

    /// Rejects both `scope.name` and `name` being assigned for the same scope.
    pub fn check_ambiguous(&self, scopes: &[&str]) -> Result<()> {
        for scope in scopes {
            let prefix = format!("{scope}.");
            for key in self.values.keys() {
                if let Some(bare) = key.strip_prefix(&prefix) {
                    if self.values.contains_key(bare) {
                        return Err(Error::Config(format!(
                            "parameter `{bare}` assigned both as `{bare}` and `{key}`"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Errors on any assignment nobody asked for.
    pub fn finish(self) -> Result<()> {
        let unused: Vec<&str> = self
            .values
            .keys()
            .filter(|k| !self.used.contains(*k))
            .map(String::as_str)
            .collect();
        if unused.is_empty() {
            Ok(())
        } else {
            Err(Error::Config(format!("unknown parameter(s): {}", unused.join(", "))))
        }
    }

    pub fn into_map(self) -> BTreeMap<String, f64> {
        self.values
    }
}
