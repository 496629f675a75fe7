//! Settings resolution: command-line flags take precedence over the
//! `KMROOTS_CACHE_DIR` environment variable, which takes precedence over the
//! config file, which takes precedence over built-in defaults.

use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::CliError;

/// Output format for every subcommand.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    /// Human-readable aligned text.
    Table,
    /// Pretty-printed JSON; byte-deterministic for fixed inputs.
    Json,
    /// One record per line with comma-separated fields.
    Csv,
}

/// Optional overrides read from the config file.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    cache_dir: Option<PathBuf>,
    default_height: Option<i64>,
    /// Interval in the same `a..b` syntax as `--window`.
    default_window: Option<String>,
    output_format: Option<String>,
}

/// Fully resolved settings used by the command implementations.
#[derive(Debug)]
pub struct Settings {
    /// Tables are cached on disk only when a directory is configured; no
    /// command ever writes outside it.
    pub cache_dir: Option<PathBuf>,
    /// Height override for table construction (per-rank default otherwise).
    pub default_height: Option<i64>,
    pub window: (i64, i64),
    pub format: Format,
}

/// Default table height by rank: tall enough to be interesting at rank ≤ 3,
/// scaled down where the lattice volume explodes.
pub fn default_table_height(rank: usize) -> i64 {
    match rank {
        0..=3 => 40,
        4 => 24,
        _ => 12,
    }
}

pub fn parse_window(text: &str) -> Result<(i64, i64), CliError> {
    let bad = || {
        CliError::Input(format!(
            "window must be `a..b` with integers a ≤ 0 ≤ b, got `{text}`"
        ))
    };
    let (lo, hi) = text.split_once("..").ok_or_else(bad)?;
    let lo: i64 = lo.trim().parse().map_err(|_| bad())?;
    let hi: i64 = hi.trim().parse().map_err(|_| bad())?;
    if lo > 0 || hi < 0 {
        return Err(bad());
    }
    Ok((lo, hi))
}

fn parse_format(text: &str) -> Result<Format, CliError> {
    match text {
        "table" => Ok(Format::Table),
        "json" => Ok(Format::Json),
        "csv" => Ok(Format::Csv),
        other => Err(CliError::Input(format!(
            "output_format must be table, json, or csv, got `{other}`"
        ))),
    }
}

fn default_config_path() -> Option<PathBuf> {
    if let Ok(dir) = std::env::var("XDG_CONFIG_HOME") {
        if !dir.is_empty() {
            return Some(Path::new(&dir).join("kmroots/config.json"));
        }
    }
    std::env::var("HOME")
        .ok()
        .filter(|h| !h.is_empty())
        .map(|h| Path::new(&h).join(".config/kmroots/config.json"))
}

fn load_file_config(explicit: Option<&Path>) -> Result<FileConfig, CliError> {
    let path = match explicit {
        Some(p) => p.to_path_buf(),
        None => match default_config_path() {
            Some(p) if p.exists() => p,
            _ => return Ok(FileConfig::default()),
        },
    };
    let text = std::fs::read_to_string(&path)
        .map_err(|e| CliError::Input(format!("cannot read config {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::Input(format!("invalid config {}: {e}", path.display())))
}

/// Resolves the final settings from flags, environment, and config file.
pub fn resolve(
    flag_cache_dir: Option<PathBuf>,
    flag_format: Option<Format>,
    flag_config: Option<&Path>,
) -> Result<Settings, CliError> {
    let file = load_file_config(flag_config)?;
    if let Some(h) = file.default_height {
        if h < 2 {
            return Err(CliError::Input(format!(
                "config default_height must be ≥ 2, got {h}"
            )));
        }
    }
    let window = match &file.default_window {
        Some(w) => parse_window(w)?,
        None => kmroots::strings::DEFAULT_WINDOW,
    };
    let format = match flag_format {
        Some(f) => f,
        None => match &file.output_format {
            Some(s) => parse_format(s)?,
            None => Format::Table,
        },
    };
    let cache_dir = flag_cache_dir
        .or_else(|| {
            std::env::var("KMROOTS_CACHE_DIR")
                .ok()
                .filter(|s| !s.is_empty())
                .map(PathBuf::from)
        })
        .or(file.cache_dir);
    Ok(Settings {
        cache_dir,
        default_height: file.default_height,
        window,
        format,
    })
}
