//! Config files: plain `key = value` lines naming long flags without the
//! leading dashes. Their flags are spliced in ahead of the command line's
//! own, and since later occurrences override earlier ones, explicit flags
//! win on conflict.

use std::ffi::OsString;
use std::path::Path;

const GLOBAL_KEYS: [&str; 4] = ["seed", "workers", "output-dir", "output"];
const SUBCOMMANDS: [&str; 7] = [
    "path", "simulate", "moments", "dist", "tails", "shortsum", "sweep",
];

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("cannot read config {path}: {source}")]
    Read {
        path: String,
        source: std::io::Error,
    },
    #[error("config {path}, line {line}: expected key=value")]
    Syntax { path: String, line: usize },
    #[error("config {path}: `config` cannot be set from a config file")]
    Nested { path: String },
}

/// `(flag, value)` pairs in file order.
pub fn parse(text: &str, path: &str) -> Result<Vec<(String, String)>, ConfigError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let syntax = || ConfigError::Syntax {
            path: path.to_string(),
            line: i + 1,
        };
        let (k, v) = line.split_once('=').ok_or_else(syntax)?;
        let key = k.trim().trim_start_matches('-').replace('_', "-");
        if key.is_empty() {
            return Err(syntax());
        }
        if key == "config" {
            return Err(ConfigError::Nested {
                path: path.to_string(),
            });
        }
        out.push((key, v.trim().to_string()));
    }
    Ok(out)
}

fn config_path(argv: &[OsString]) -> Option<OsString> {
    let mut it = argv.iter();
    while let Some(arg) = it.next() {
        let s = arg.to_string_lossy();
        if s == "--" {
            break;
        }
        if s == "--config" {
            return it.next().cloned();
        }
        if let Some(rest) = s.strip_prefix("--config=") {
            return Some(rest.into());
        }
    }
    None
}

/// Returns `argv` with the config file's flags spliced in: global flags
/// right after the program name, the rest right after the subcommand.
pub fn expand(argv: Vec<OsString>) -> Result<Vec<OsString>, ConfigError> {
    let Some(path) = config_path(&argv) else {
        return Ok(argv);
    };
    let display = Path::new(&path).display().to_string();
    let text = std::fs::read_to_string(&path).map_err(|source| ConfigError::Read {
        path: display.clone(),
        source,
    })?;

    let mut global = Vec::new();
    let mut local = Vec::new();
    for (k, v) in parse(&text, &display)? {
        let dest = if GLOBAL_KEYS.contains(&k.as_str()) {
            &mut global
        } else {
            &mut local
        };
        dest.push(OsString::from(format!("--{k}")));
        dest.push(OsString::from(v));
    }
    let sub = argv
        .iter()
        .position(|a| SUBCOMMANDS.contains(&a.to_string_lossy().as_ref()));
    let split = sub.map_or(argv.len(), |i| i + 1);
    let mut out = Vec::with_capacity(argv.len() + global.len() + local.len());
    out.extend(argv.iter().take(1).cloned());
    out.extend(global);
    out.extend(argv.iter().take(split).skip(1).cloned());
    out.extend(local);
    out.extend(argv.iter().skip(split).cloned());
    Ok(out)
}
