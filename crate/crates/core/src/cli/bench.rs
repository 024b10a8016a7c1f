use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Args, Subcommand};

use erotetic::corpus::{Condition, Problem, Template};
use erotetic::harness::report::{render_text, to_jsonl};
use erotetic::harness::run::{read_jsonl, write_jsonl};
use erotetic::harness::stats::{significance, Method};
use erotetic::harness::{
    aggregate, build_key, run_bench, score, wilcoxon_with, HarnessError, Measure, Override, RunConfig, ScoreRecord,
    Status, TranscriptRecord, ZeroPolicy,
};

use super::{config_err, load_problems, CliError, CliResult};

#[derive(Subcommand, Debug)]
pub enum BenchCommand {
    /// Send every rendered prompt to a responder and record transcripts.
    Run(RunArgs),
    /// Score transcripts against the engine and oracle key.
    Score(ScoreArgs),
    /// Aggregate score files into rates and significance tests.
    Report(ReportArgs),
}

#[derive(Args, Debug)]
pub struct RunArgs {
    /// Responder command line, split on whitespace; the prompt arrives on stdin.
    #[arg(long)]
    responder: String,
    /// Corpus file; the built-in corpus when neither source is given.
    #[arg(long, value_name = "FILE", conflicts_with = "generated")]
    corpus: Option<PathBuf>,
    /// Generated JSONL file.
    #[arg(long, value_name = "FILE")]
    generated: Option<PathBuf>,
    #[arg(long, value_delimiter = ',', default_value = "production,query")]
    conditions: Vec<String>,
    #[arg(long, value_delimiter = ',', default_value = "none,control,etr")]
    templates: Vec<String>,
    /// Seconds per responder call.
    #[arg(long, default_value_t = 60.0)]
    timeout: f64,
    #[arg(long, value_name = "DIR")]
    out: PathBuf,
    /// Responder processes in flight.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

#[derive(Args, Debug)]
pub struct ScoreArgs {
    /// Run directory holding corpus.etr and transcripts.jsonl.
    #[arg(long, value_name = "DIR")]
    dir: PathBuf,
    #[arg(long, value_name = "FILE")]
    corpus: Option<PathBuf>,
    #[arg(long, value_name = "FILE")]
    transcripts: Option<PathBuf>,
    /// JSONL of hand verdicts; these replace automatic ones.
    #[arg(long, value_name = "FILE")]
    overrides: Option<PathBuf>,
    /// Defaults to scores.jsonl in the run directory.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct ReportArgs {
    /// Score files or run directories, one per group.
    #[arg(required = true)]
    inputs: Vec<PathBuf>,
    /// Group labels in input order; file or directory names by default.
    #[arg(long)]
    label: Vec<String>,
    /// Also write the report as JSONL.
    #[arg(long, value_name = "FILE")]
    jsonl: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct StatsArgs {
    /// Two score files, paired by problem and template.
    #[arg(long, num_args = 2, value_names = ["A", "B"], required = true)]
    pairs: Vec<PathBuf>,
    /// Keep zero differences in the ranking.
    #[arg(long)]
    pratt: bool,
    /// Limit to one measure, e.g. correct_produced.
    #[arg(long)]
    measure: Option<String>,
}

fn harness_err(e: HarnessError) -> CliError {
    match e {
        HarnessError::Spawn { .. } => CliError::responder(e),
        HarnessError::Config(_) | HarnessError::Record { .. } => CliError::config(e),
        HarnessError::Io { .. } => CliError::from(anyhow::Error::new(e)),
    }
}

pub fn bench(cmd: BenchCommand) -> CliResult {
    match cmd {
        BenchCommand::Run(a) => run(a),
        BenchCommand::Score(a) => score_cmd(a),
        BenchCommand::Report(a) => report(a),
    }
}

fn parse_list<T>(items: &[String], what: &str, parse: impl Fn(&str) -> Option<T>) -> Result<Vec<T>, CliError> {
    items.iter().map(|s| parse(s.trim()).ok_or_else(|| config_err(format!("unknown {what} `{s}`")))).collect()
}

fn run(args: RunArgs) -> CliResult {
    let conditions = parse_list(&args.conditions, "condition", Condition::parse)?;
    let templates = parse_list(&args.templates, "template", Template::parse)?;
    if !(args.timeout.is_finite() && args.timeout > 0.0) {
        return Err(config_err("--timeout must be a positive number of seconds"));
    }
    let problems = load_problems(args.generated.as_deref().or(args.corpus.as_deref()))?;
    let cfg = RunConfig {
        problems,
        responder: args.responder.split_whitespace().map(String::from).collect(),
        conditions,
        templates,
        timeout: Duration::from_secs_f64(args.timeout),
        out_dir: args.out.clone(),
        jobs: args.jobs,
    };
    let out = run_bench(&cfg).map_err(harness_err)?;
    for s in &out.skipped {
        eprintln!("skipped {s}");
    }
    let timed_out = out.transcripts.iter().filter(|t| t.status == Status::TimedOut).count();
    let failed = out.transcripts.iter().filter(|t| t.status == Status::Failed).count();
    println!(
        "{} transcripts ({timed_out} timed out, {failed} failed, {} cells skipped) in {}",
        out.transcripts.len(),
        out.skipped.len(),
        args.out.join("transcripts.jsonl").display()
    );
    if timed_out + failed > 0 {
        return Err(CliError::responder(anyhow::anyhow!("{} responder call(s) did not complete", timed_out + failed)));
    }
    Ok(())
}

fn score_dir(
    corpus: &Path,
    transcripts: &Path,
    overrides: Option<&Path>,
) -> Result<(Vec<Problem>, Vec<ScoreRecord>), CliError> {
    let problems = load_problems(Some(corpus))?;
    let key = build_key(&problems).map_err(|e| anyhow::anyhow!("{e}"))?;
    let ts: Vec<TranscriptRecord> = read_jsonl(transcripts).map_err(harness_err)?;
    let ovs: Vec<Override> = match overrides {
        Some(p) => read_jsonl(p).map_err(harness_err)?,
        None => Vec::new(),
    };
    for o in &ovs {
        eprintln!(
            "override {} [{} {}{}]: correct={:?} etr={:?}",
            o.problem_id,
            o.template,
            o.condition,
            o.frame.as_deref().map(|f| format!(" {f}")).unwrap_or_default(),
            o.correct,
            o.etr
        );
    }
    Ok((problems, score(&ts, &key, &ovs)))
}

fn score_cmd(args: ScoreArgs) -> CliResult {
    let corpus = args.corpus.clone().unwrap_or_else(|| args.dir.join("corpus.etr"));
    let transcripts = args.transcripts.clone().unwrap_or_else(|| args.dir.join("transcripts.jsonl"));
    let (_, records) = score_dir(&corpus, &transcripts, args.overrides.as_deref())?;
    let out = args.out.clone().unwrap_or_else(|| args.dir.join("scores.jsonl"));
    write_jsonl(&out, &records).map_err(harness_err)?;
    let review = records.iter().filter(|r| r.needs_review).count();
    println!("{} score records ({review} need review) in {}", records.len(), out.display());
    Ok(())
}

fn load_scores(path: &Path) -> Result<Vec<ScoreRecord>, CliError> {
    if !path.is_dir() {
        return read_jsonl(path).map_err(harness_err);
    }
    let scores = path.join("scores.jsonl");
    if scores.exists() {
        return read_jsonl(&scores).map_err(harness_err);
    }
    Ok(score_dir(&path.join("corpus.etr"), &path.join("transcripts.jsonl"), None)?.1)
}

fn default_label(path: &Path) -> String {
    let name = if path.is_dir() { path.file_name() } else { path.file_stem() };
    name.map(|n| n.to_string_lossy().into_owned()).unwrap_or_else(|| path.display().to_string())
}

fn report(args: ReportArgs) -> CliResult {
    if !args.label.is_empty() && args.label.len() != args.inputs.len() {
        return Err(config_err(format!("{} labels for {} inputs", args.label.len(), args.inputs.len())));
    }
    let mut groups = Vec::new();
    for (i, path) in args.inputs.iter().enumerate() {
        let label = args.label.get(i).cloned().unwrap_or_else(|| default_label(path));
        groups.push((label, load_scores(path)?));
    }
    let report = aggregate(&groups);
    print!("{}", render_text(&report));
    if let Some(out) = &args.jsonl {
        std::fs::write(out, to_jsonl(&report)).map_err(|e| anyhow::anyhow!("{}: {e}", out.display()))?;
    }
    Ok(())
}

fn as_f64(b: bool) -> f64 {
    if b {
        1.0
    } else {
        0.0
    }
}

pub fn stats(args: StatsArgs) -> CliResult {
    let a: Vec<ScoreRecord> = load_scores(&args.pairs[0])?;
    let b: Vec<ScoreRecord> = load_scores(&args.pairs[1])?;
    let measures: Vec<Measure> = match &args.measure {
        Some(m) => vec![serde_json::from_value(serde_json::Value::String(m.clone()))
            .map_err(|_| config_err(format!("unknown measure `{m}`")))?],
        None => Measure::ALL.to_vec(),
    };
    let index: BTreeMap<(&str, &str), &ScoreRecord> =
        b.iter().map(|r| ((r.problem_id.as_str(), r.template.as_str()), r)).collect();
    let paired: Vec<(&ScoreRecord, &ScoreRecord)> =
        a.iter().filter_map(|r| index.get(&(r.problem_id.as_str(), r.template.as_str())).map(|s| (r, *s))).collect();
    let unpaired = a.len() + b.len() - 2 * paired.len();
    if unpaired > 0 {
        eprintln!("{unpaired} record(s) without a partner were left out");
    }
    let zeros = if args.pratt { ZeroPolicy::Pratt } else { ZeroPolicy::Discard };
    for m in measures {
        let xs: Vec<f64> = paired.iter().map(|(x, _)| as_f64(m.of(x))).collect();
        let ys: Vec<f64> = paired.iter().map(|(_, y)| as_f64(m.of(y))).collect();
        let w = wilcoxon_with(&xs, &ys, zeros).map_err(config_err)?;
        let method = match w.method {
            Method::Exact => "exact",
            Method::Normal => "normal",
            Method::Degenerate => "degenerate",
        };
        let name = serde_json::to_value(m).expect("measure serializes");
        println!(
            "{:<18} p={:.4}{:<2} W+={} n={} pairs={} {method}",
            name.as_str().unwrap_or_default(),
            w.p_value,
            significance(w.p_value),
            w.statistic,
            w.n,
            paired.len()
        );
    }
    Ok(())
}
