//! Command-line map descriptions: a builtin name, optional positional
//! parameters after a colon (`translation:0.25,0.25`, `f1:0.002,0.001`), and
//! optional named overrides from repeated `--param key=value` flags.

use anyhow::{bail, Context, Result};
use rotset::maps::{builtin, LiftedMap};

/// Positional parameter names, in order, for builtins that take any.
fn positional_names(name: &str) -> &'static [&'static str] {
    match name {
        "translation" => &["dx", "dy"],
        "p" => &["alpha"],
        "q" => &["beta"],
        "r" | "f1" | "f2" => &["alpha", "beta"],
        _ => &[],
    }
}

pub struct ParsedMap {
    pub map: LiftedMap,
    /// The full spec as given, echoed into reports and file names.
    pub spec: String,
    pub overrides: Vec<(String, f64)>,
}

pub fn parse_map(spec: &str, params: &[String]) -> Result<ParsedMap> {
    let (name, positional) = match spec.split_once(':') {
        Some((n, rest)) => (n.trim(), rest),
        None => (spec.trim(), ""),
    };
    let mut overrides: Vec<(String, f64)> = Vec::new();
    if !positional.is_empty() {
        let names = positional_names(name);
        let values: Vec<&str> = positional.split(',').collect();
        if names.is_empty() {
            bail!("map `{name}` takes no positional parameters");
        }
        if values.len() > names.len() {
            bail!(
                "map `{name}` takes at most {} positional parameters ({})",
                names.len(),
                names.join(",")
            );
        }
        for (key, raw) in names.iter().zip(values) {
            let v: f64 = raw
                .trim()
                .parse()
                .with_context(|| format!("map parameter `{key}`: bad number `{raw}`"))?;
            overrides.push((key.to_string(), v));
        }
    }
    for p in params {
        let Some((key, raw)) = p.split_once('=') else {
            bail!("--param expects key=value, got `{p}`");
        };
        let v: f64 =
            raw.trim().parse().with_context(|| format!("--param {key}: bad number `{raw}`"))?;
        let key = key.trim().to_string();
        overrides.retain(|(k, _)| *k != key); // named wins over positional
        overrides.push((key, v));
    }
    let pairs: Vec<(&str, f64)> = overrides.iter().map(|(k, v)| (k.as_str(), *v)).collect();
    let map = builtin(name, &pairs)?;
    let spec = spec.trim().to_string();
    Ok(ParsedMap { map, spec, overrides })
}

/// File-name-safe form of a map spec.
pub fn slug(spec: &str) -> String {
    spec.chars()
        .map(|c| if c.is_ascii_alphanumeric() || c == '.' || c == '-' { c } else { '_' })
        .collect()
}
