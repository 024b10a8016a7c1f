//! Dispatch of rendered prompts to an external responder, one fresh process
//! per cell.

use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::process::{Command, Stdio};
use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};
use thiserror::Error;
use wait_timeout::ChildExt;

use crate::corpus::{render_frame, serialize_corpus, Condition, Problem, RenderError, Template};

/// Environment variable pointing responders at the run's corpus file.
pub const CORPUS_ENV: &str = "EROTETIC_CORPUS";

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("configuration: {0}")]
    Config(String),
    #[error("failed to start responder `{program}`: {source}")]
    Spawn { program: String, source: std::io::Error },
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}, line {line}: {message}")]
    Record { path: PathBuf, line: usize, message: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Ok,
    TimedOut,
    /// The responder exited unsuccessfully.
    Failed,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TranscriptRecord {
    pub problem_id: String,
    pub frame: Option<String>,
    pub condition: String,
    pub template: String,
    pub prompt: String,
    pub response: String,
    pub status: Status,
    pub elapsed_ms: u64,
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub problems: Vec<Problem>,
    /// Program and arguments.
    pub responder: Vec<String>,
    pub conditions: Vec<Condition>,
    pub templates: Vec<Template>,
    pub timeout: Duration,
    pub out_dir: PathBuf,
    pub jobs: usize,
}

#[derive(Debug, Clone)]
pub struct Cell {
    pub problem_id: String,
    pub frame: Option<String>,
    pub condition: Condition,
    pub template: Template,
    pub prompt: String,
}

#[derive(Debug, Clone, Default)]
pub struct RunOutput {
    pub transcripts: Vec<TranscriptRecord>,
    /// Cells that could not be rendered, e.g. a query without a target.
    pub skipped: Vec<String>,
}

/// Every (problem, frame, condition, template) cell in a fixed order.
pub fn cells(cfg: &RunConfig) -> (Vec<Cell>, Vec<String>) {
    let mut out = Vec::new();
    let mut skipped = Vec::new();
    for p in &cfg.problems {
        for frame in p.frames() {
            for &condition in &cfg.conditions {
                for &template in &cfg.templates {
                    match render_frame(p, frame.as_deref(), condition, template) {
                        Ok(prompt) => out.push(Cell {
                            problem_id: p.id.clone(),
                            frame: frame.clone(),
                            condition,
                            template,
                            prompt,
                        }),
                        Err(e @ RenderError::NoQueryTarget(_)) => {
                            let f = frame.as_deref().map(|f| format!("/{f}")).unwrap_or_default();
                            skipped.push(format!("{}{f} {condition} {template}: {e}", p.id));
                        }
                        Err(e) => skipped.push(format!("{}: {e}", p.id)),
                    }
                }
            }
        }
    }
    (out, skipped)
}

fn validate(cfg: &RunConfig) -> Result<(), HarnessError> {
    if cfg.responder.is_empty() || cfg.responder[0].is_empty() {
        return Err(HarnessError::Config("responder command is empty".into()));
    }
    if cfg.timeout.is_zero() {
        return Err(HarnessError::Config("timeout must be positive".into()));
    }
    if cfg.conditions.is_empty() || cfg.templates.is_empty() {
        return Err(HarnessError::Config("need at least one condition and one template".into()));
    }
    if cfg.jobs == 0 {
        return Err(HarnessError::Config("jobs must be at least 1".into()));
    }
    Ok(())
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> HarnessError + '_ {
    move |source| HarnessError::Io { path: path.to_path_buf(), source }
}

fn dispatch(cfg: &RunConfig, corpus: &Path, cell: &Cell) -> Result<TranscriptRecord, HarnessError> {
    let start = Instant::now();
    let mut child = Command::new(&cfg.responder[0])
        .args(&cfg.responder[1..])
        .env(CORPUS_ENV, corpus)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::null())
        .spawn()
        .map_err(|source| HarnessError::Spawn { program: cfg.responder[0].clone(), source })?;

    let mut stdin = child.stdin.take().expect("piped stdin");
    let prompt = cell.prompt.clone();
    let writer = std::thread::spawn(move || {
        // a responder may exit without reading; a broken pipe is not our failure
        let _ = stdin.write_all(prompt.as_bytes());
    });
    let mut stdout = child.stdout.take().expect("piped stdout");
    let reader = std::thread::spawn(move || {
        let mut buf = Vec::new();
        let _ = stdout.read_to_end(&mut buf);
        buf
    });

    let status = match child.wait_timeout(cfg.timeout).map_err(io_err(Path::new(&cfg.responder[0])))? {
        Some(s) if s.success() => Status::Ok,
        Some(_) => Status::Failed,
        None => {
            let _ = child.kill();
            let _ = child.wait();
            Status::TimedOut
        }
    };
    // after a kill, grandchildren may still hold the pipes open; leave the
    // pipe threads to finish on their own
    let response = if status == Status::TimedOut {
        String::new()
    } else {
        let _ = writer.join();
        String::from_utf8_lossy(&reader.join().unwrap_or_default()).into_owned()
    };
    Ok(TranscriptRecord {
        problem_id: cell.problem_id.clone(),
        frame: cell.frame.clone(),
        condition: cell.condition.to_string(),
        template: cell.template.to_string(),
        prompt: cell.prompt.clone(),
        response,
        status,
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}

/// Runs every cell and writes `corpus.etr` and `transcripts.jsonl` into the
/// output directory. Transcripts keep cell order whatever the width.
pub fn run_bench(cfg: &RunConfig) -> Result<RunOutput, HarnessError> {
    validate(cfg)?;
    std::fs::create_dir_all(&cfg.out_dir).map_err(io_err(&cfg.out_dir))?;
    let corpus_path = cfg.out_dir.join("corpus.etr");
    std::fs::write(&corpus_path, serialize_corpus(&cfg.problems)).map_err(io_err(&corpus_path))?;
    let corpus_path = corpus_path.canonicalize().map_err(io_err(&corpus_path))?;

    let (cells, skipped) = cells(cfg);
    let results: Mutex<Vec<Option<TranscriptRecord>>> = Mutex::new(vec![None; cells.len()]);
    let failure: Mutex<Option<HarnessError>> = Mutex::new(None);
    let next = AtomicUsize::new(0);
    let abort = AtomicBool::new(false);
    std::thread::scope(|s| {
        for _ in 0..cfg.jobs.min(cells.len().max(1)) {
            s.spawn(|| loop {
                if abort.load(Ordering::SeqCst) {
                    break;
                }
                let i = next.fetch_add(1, Ordering::SeqCst);
                let Some(cell) = cells.get(i) else { break };
                match dispatch(cfg, &corpus_path, cell) {
                    Ok(t) => results.lock().expect("results lock")[i] = Some(t),
                    Err(e) => {
                        abort.store(true, Ordering::SeqCst);
                        failure.lock().expect("failure lock").get_or_insert(e);
                        break;
                    }
                }
            });
        }
    });
    if let Some(e) = failure.into_inner().expect("failure lock") {
        return Err(e);
    }
    let transcripts: Vec<TranscriptRecord> =
        results.into_inner().expect("results lock").into_iter().flatten().collect();
    let path = cfg.out_dir.join("transcripts.jsonl");
    write_jsonl(&path, &transcripts)?;
    Ok(RunOutput { transcripts, skipped })
}

pub fn write_jsonl<T: Serialize>(path: &Path, records: &[T]) -> Result<(), HarnessError> {
    let mut text = String::new();
    for r in records {
        text.push_str(&serde_json::to_string(r).expect("record serializes"));
        text.push('\n');
    }
    std::fs::write(path, text).map_err(io_err(path))
}

pub fn read_jsonl<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<Vec<T>, HarnessError> {
    let text = std::fs::read_to_string(path).map_err(io_err(path))?;
    parse_jsonl(&text).map_err(|(line, message)| HarnessError::Record { path: path.to_path_buf(), line, message })
}

pub fn parse_jsonl<T: for<'de> Deserialize<'de>>(text: &str) -> Result<Vec<T>, (usize, String)> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| serde_json::from_str(l).map_err(|e| (i + 1, e.to_string())))
        .collect()
}
