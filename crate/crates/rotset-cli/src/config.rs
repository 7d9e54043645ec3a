//! Plain-text config files: one `key = value` per line, `#` comments.
//! Keys mirror the long flag names of the invoked subcommand; flags override
//! file values, and keys the subcommand does not know are errors.

use std::collections::BTreeMap;
use std::path::Path;

use anyhow::{bail, Context, Result};

pub struct ConfigFile {
    entries: BTreeMap<String, String>,
}

impl ConfigFile {
    pub fn empty() -> ConfigFile {
        ConfigFile { entries: BTreeMap::new() }
    }

    pub fn load(path: &Path) -> Result<ConfigFile> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading config {}", path.display()))?;
        let mut entries = BTreeMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                bail!("{}:{}: expected `key = value`, got `{raw}`", path.display(), lineno + 1);
            };
            let key = key.trim().to_string();
            let value = value.trim().to_string();
            if key.is_empty() || value.is_empty() {
                bail!("{}:{}: empty key or value", path.display(), lineno + 1);
            }
            if entries.insert(key.clone(), value).is_some() {
                bail!("{}:{}: duplicate key `{key}`", path.display(), lineno + 1);
            }
        }
        Ok(ConfigFile { entries })
    }

    /// Flag value if given, else the config value parsed as `T`, else `None`.
    pub fn resolve<T>(&mut self, flag: Option<T>, key: &str) -> Result<Option<T>>
    where
        T: std::str::FromStr,
        T::Err: std::fmt::Display,
    {
        let file_value = self.entries.remove(key);
        if flag.is_some() {
            return Ok(flag);
        }
        match file_value {
            None => Ok(None),
            Some(raw) => match raw.parse::<T>() {
                Ok(v) => Ok(Some(v)),
                Err(e) => bail!("config key `{key}`: cannot parse `{raw}`: {e}"),
            },
        }
    }

    /// Every key must have been consumed by a `resolve` call.
    pub fn finish(self) -> Result<()> {
        if let Some(key) = self.entries.keys().next() {
            bail!("config key `{key}` is not a flag of this subcommand");
        }
        Ok(())
    }
}
