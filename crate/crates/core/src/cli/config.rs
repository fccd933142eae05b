use std::collections::BTreeMap;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use super::CliError;

/// Resolved parameters of one invocation: defaults, then the config file,
/// then command-line flags.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub command: &'static str,
    pub parameters: BTreeMap<String, String>,
}

pub(crate) fn defaults(command: &str) -> &'static [(&'static str, &'static str)] {
    match command {
        "zones" => &[("atoms", "4"), ("k-min", "0"), ("k-max", "6")],
        "spectrum" => &[("M", "5"), ("r2", "3")],
        "compare" => &[("r2", "12"), ("m-min", "0"), ("m-max", "40")],
        "intensity" => &[("atoms", "10"), ("omega", "10"), ("kt-min", "0.1"), ("kt-max", "100"), ("grid", "61")],
        "verify" => &[("suite", "all")],
        _ => &[],
    }
}

/// Keys a command accepts beyond its defaults.
fn optional(command: &str) -> &'static [&'static str] {
    match command {
        "intensity" => &["m-cap"],
        _ => &[],
    }
}

/// Reads `key = value` lines; blank lines and `#` comments are skipped.
pub fn parse_config_file(path: &Path) -> Result<Vec<(String, String)>, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Invalid(format!("cannot read config {}: {e}", path.display())))?;
    let mut out = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| CliError::Invalid(format!("{}:{}: expected key=value", path.display(), n + 1)))?;
        out.push((k.trim().to_string(), v.trim().to_string()));
    }
    Ok(out)
}

impl RunConfig {
    pub fn resolve(
        command: &'static str,
        file: &[(String, String)],
        flags: &[(&'static str, Option<String>)],
    ) -> Result<Self, CliError> {
        let mut parameters: BTreeMap<String, String> =
            defaults(command).iter().map(|(k, v)| (k.to_string(), v.to_string())).collect();
        parameters.insert("format".into(), "csv".into());
        for (k, v) in file {
            if !parameters.contains_key(k.as_str()) && !optional(command).contains(&k.as_str()) {
                return Err(CliError::Invalid(format!("unknown key `{k}` for `{command}` in config file")));
            }
            parameters.insert(k.clone(), v.clone());
        }
        for (k, v) in flags {
            if let Some(v) = v {
                parameters.insert(k.to_string(), v.clone());
            }
        }
        Ok(RunConfig { command, parameters })
    }

    pub fn get<T: FromStr>(&self, key: &str) -> Result<T, CliError> {
        let raw = self.parameters.get(key).ok_or_else(|| CliError::Invalid(format!("missing parameter `{key}`")))?;
        raw.parse().map_err(|_| CliError::Invalid(format!("cannot parse `{key}` = `{raw}`")))
    }

    pub fn get_opt<T: FromStr>(&self, key: &str) -> Result<Option<T>, CliError> {
        if self.parameters.contains_key(key) {
            self.get(key).map(Some)
        } else {
            Ok(None)
        }
    }
}
