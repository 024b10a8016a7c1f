pub mod bench;
pub mod config;
pub mod corpus;
pub mod generate;
pub mod reason;
pub mod respond;

use std::path::Path;

use erotetic::corpus::{builtin, parse_corpus, Problem};
use erotetic::generator::from_jsonl;

/// Bad flags, unreadable or unparsable input.
pub const EXIT_CONFIG: u8 = 2;
/// The responder could not be started or did not answer.
pub const EXIT_RESPONDER: u8 = 3;
/// A check found mismatches.
pub const EXIT_MISMATCH: u8 = 1;

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub error: anyhow::Error,
}

impl CliError {
    pub fn config(e: impl Into<anyhow::Error>) -> Self {
        CliError { code: EXIT_CONFIG, error: e.into() }
    }

    pub fn responder(e: impl Into<anyhow::Error>) -> Self {
        CliError { code: EXIT_RESPONDER, error: e.into() }
    }

    pub fn mismatch(message: impl Into<String>) -> Self {
        CliError { code: EXIT_MISMATCH, error: anyhow::anyhow!(message.into()) }
    }
}

impl From<anyhow::Error> for CliError {
    fn from(error: anyhow::Error) -> Self {
        CliError { code: 1, error }
    }
}

pub type CliResult = Result<(), CliError>;

pub fn config_err(message: impl std::fmt::Display) -> CliError {
    CliError::config(anyhow::anyhow!("{message}"))
}

/// Problems from a corpus file (`.etr` text or generated `.jsonl`), or the
/// built-in corpus when no path is given.
pub fn load_problems(path: Option<&Path>) -> Result<Vec<Problem>, CliError> {
    let Some(path) = path else { return Ok(builtin()) };
    let text = std::fs::read_to_string(path).map_err(|e| config_err(format!("{}: {e}", path.display())))?;
    if path.extension().is_some_and(|x| x == "jsonl") {
        let instances = from_jsonl(&text).map_err(|e| config_err(format!("{}: {e}", path.display())))?;
        return Ok(instances.into_iter().map(|i| i.problem).collect());
    }
    parse_corpus(&text).map_err(|e| config_err(format!("{}: {e}", path.display())))
}

pub fn find<'a>(problems: &'a [Problem], id: &str) -> Result<&'a Problem, CliError> {
    problems.iter().find(|p| p.id == id).ok_or_else(|| config_err(format!("no problem with id `{id}`")))
}
