//! Config-file defaults merged under command-line flags.
//!
//! ```toml
//! [generate]
//! family = "illusory"
//! count = 100
//!
//! [bench.run]
//! responder = "./scripts/etr_mimic.sh"
//! jobs = 4
//! ```
//!
//! Keys name long flags of the subcommand; a flag given on the command line
//! wins over the file.

use std::path::Path;

use anyhow::{bail, Context, Result};

const SUBCOMMANDS: [&str; 10] =
    ["reason", "inquire", "oracle-check", "corpus", "generate", "bench", "stats", "respond", "run", "score"];

/// Pulls `--config <path>` out of `args` and appends the file's defaults for
/// the invoked subcommand.
pub fn merge(mut args: Vec<String>) -> Result<Vec<String>> {
    let Some(pos) = args.iter().position(|a| a == "--config" || a.starts_with("--config=")) else {
        return Ok(args);
    };
    let path = match args[pos].strip_prefix("--config=") {
        Some(p) => {
            let p = p.to_string();
            args.remove(pos);
            p
        }
        None => {
            if pos + 1 >= args.len() {
                bail!("--config needs a path");
            }
            let p = args.remove(pos + 1);
            args.remove(pos);
            p
        }
    };
    let text = std::fs::read_to_string(Path::new(&path)).with_context(|| format!("reading config {path}"))?;
    let table: toml::Table = text.parse().with_context(|| format!("parsing config {path}"))?;

    let path_words: Vec<&str> = args
        .iter()
        .skip(1)
        .take_while(|a| !a.starts_with('-'))
        .map(String::as_str)
        .filter(|a| SUBCOMMANDS.contains(a))
        .collect();
    let mut section = &table;
    for w in &path_words {
        match section.get(*w) {
            Some(toml::Value::Table(t)) => section = t,
            _ => return Ok(args),
        }
    }
    if path_words.is_empty() {
        return Ok(args);
    }

    let end = args.iter().position(|a| a == "--").unwrap_or(args.len());
    let mut extra = Vec::new();
    for (key, value) in section {
        if matches!(value, toml::Value::Table(_)) {
            continue;
        }
        let flag = format!("--{key}");
        if args[..end].iter().any(|a| *a == flag || a.starts_with(&format!("{flag}="))) {
            continue;
        }
        match value {
            toml::Value::Boolean(true) => extra.push(flag),
            toml::Value::Boolean(false) => {}
            toml::Value::Array(items) => {
                for item in items {
                    extra.push(flag.clone());
                    extra.push(scalar(key, item)?);
                }
            }
            other => {
                extra.push(flag);
                extra.push(scalar(key, other)?);
            }
        }
    }
    args.splice(end..end, extra);
    Ok(args)
}

fn scalar(key: &str, v: &toml::Value) -> Result<String> {
    Ok(match v {
        toml::Value::String(s) => s.clone(),
        toml::Value::Integer(i) => i.to_string(),
        toml::Value::Float(f) => f.to_string(),
        toml::Value::Boolean(b) => b.to_string(),
        _ => bail!("config key `{key}` must be a scalar or a list of scalars"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn argv(xs: &[&str]) -> Vec<String> {
        xs.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn flags_win_over_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.toml");
        std::fs::write(&path, "[generate]\ncount = 5\nseed = 9\n[bench.run]\njobs = 2\n").unwrap();
        let p = path.to_str().unwrap();
        let out = merge(argv(&["erotetic", "--config", p, "generate", "--seed", "1"])).unwrap();
        assert_eq!(out, argv(&["erotetic", "generate", "--seed", "1", "--count", "5"]));
        let out = merge(argv(&["erotetic", "bench", "run", &format!("--config={p}")])).unwrap();
        assert_eq!(out, argv(&["erotetic", "bench", "run", "--jobs", "2"]));
    }
}
