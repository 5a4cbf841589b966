//! Flat `key = value` configuration with flag overrides.

use std::collections::BTreeMap;
use std::path::Path;

use crate::args::{Cli, Format};
use crate::CliError;

pub const PRECISION_ENV: &str = "DEURING_PRECISION";
pub const DEFAULT_PRECISION: u32 = 80;
pub const DEFAULT_PRESET: &str = "convexity,bordignon";

const KEYS: &[&str] = &["format", "precision", "threads", "preset"];

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub format: Format,
    pub precision: u32,
    pub threads: Option<usize>,
    pub preset: String,
}

pub fn parse_file(text: &str) -> Result<BTreeMap<String, String>, CliError> {
    let mut out = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("config line {}: expected `key = value`", i + 1)))?;
        let (k, v) = (k.trim(), v.trim());
        if !KEYS.contains(&k) {
            return Err(CliError::Usage(format!("config line {}: unknown key {k:?}", i + 1)));
        }
        if out.insert(k.to_string(), v.to_string()).is_some() {
            return Err(CliError::Usage(format!("config line {}: duplicate key {k:?}", i + 1)));
        }
    }
    Ok(out)
}

fn parse_precision(s: &str, origin: &str) -> Result<u32, CliError> {
    match s.trim().parse::<u32>() {
        Ok(b) if (8..=4096).contains(&b) => Ok(b),
        _ => Err(CliError::Usage(format!("{origin}: precision must be an integer in 8..=4096, got {s:?}"))),
    }
}

/// Flag, then config file, then environment (precision only), then default.
pub fn resolve(cli: &Cli, env_precision: Option<String>) -> Result<RunConfig, CliError> {
    let file = match &cli.config {
        Some(path) => load(path)?,
        None => BTreeMap::new(),
    };
    let format = match (cli.format, file.get("format")) {
        (Some(f), _) => f,
        (None, Some(s)) => s.parse().map_err(|e| CliError::Usage(format!("config: {e}")))?,
        (None, None) => Format::Table,
    };
    let precision = match (cli.precision, file.get("precision"), env_precision) {
        (Some(b), _, _) => b,
        (None, Some(s), _) => parse_precision(s, "config")?,
        (None, None, Some(s)) => parse_precision(&s, PRECISION_ENV)?,
        (None, None, None) => DEFAULT_PRECISION,
    };
    let threads = match (cli.threads, file.get("threads")) {
        (Some(n), _) => Some(n),
        (None, Some(s)) => Some(
            s.parse::<usize>()
                .map_err(|_| CliError::Usage(format!("config: threads must be an integer, got {s:?}")))?,
        ),
        (None, None) => None,
    };
    let preset = file.get("preset").cloned().unwrap_or_else(|| DEFAULT_PRESET.to_string());
    Ok(RunConfig { format, precision, threads, preset })
}

fn load(path: &Path) -> Result<BTreeMap<String, String>, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
    parse_file(&text)
}
