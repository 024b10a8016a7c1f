use std::path::PathBuf;

use clap::Args;

use erotetic::generator::{self, from_jsonl, label, to_jsonl, Family, GenConfig, GenError, Order};

use super::{config_err, CliError, CliResult};

#[derive(Args, Debug)]
pub struct GenerateArgs {
    /// illusory, modus-ponens, conjunction-ranking or decision-framing.
    #[arg(long, default_value = "illusory")]
    family: String,
    #[arg(long, default_value_t = 1)]
    count: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 2)]
    atoms_per_conjunct: usize,
    #[arg(long, default_value_t = 2)]
    disjuncts: usize,
    /// question-first, answer-first or both.
    #[arg(long, default_value = "question-first")]
    order: String,
    /// Comma-separated atom names; a stock card vocabulary when omitted.
    #[arg(long, value_delimiter = ',')]
    vocabulary: Vec<String>,
    /// Output file; stdout when omitted.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
    /// Relabel every instance of a generated file and compare.
    #[arg(long, value_name = "FILE", conflicts_with = "out")]
    check: Option<PathBuf>,
}

fn gen_err(e: GenError) -> CliError {
    match e {
        GenError::Config(_) | GenError::VocabularyExhausted { .. } | GenError::Parse(_) | GenError::Record { .. } => {
            CliError::config(e)
        }
        GenError::Analysis(_) => CliError::from(anyhow::Error::new(e)),
    }
}

pub fn generate(args: GenerateArgs) -> CliResult {
    if let Some(path) = &args.check {
        return check(path);
    }
    let family = Family::parse(&args.family).ok_or_else(|| config_err(format!("unknown family `{}`", args.family)))?;
    let order = Order::parse(&args.order).ok_or_else(|| config_err(format!("unknown order `{}`", args.order)))?;
    let mut cfg = GenConfig {
        seed: args.seed,
        family,
        count: args.count,
        atoms_per_conjunct: args.atoms_per_conjunct,
        disjuncts: args.disjuncts,
        order,
        ..GenConfig::default()
    };
    if !args.vocabulary.is_empty() {
        cfg.vocabulary = args.vocabulary.clone();
    }
    let instances = generator::generate(&cfg).map_err(gen_err)?;
    let text = to_jsonl(&instances);
    match &args.out {
        Some(path) => {
            std::fs::write(path, text).map_err(|e| config_err(format!("{}: {e}", path.display())))?;
            let fallacies = instances.iter().filter(|i| i.prediction.fallacy).count();
            eprintln!("wrote {} instances ({fallacies} fallacious) to {}", instances.len(), path.display());
        }
        None => print!("{text}"),
    }
    Ok(())
}

fn check(path: &std::path::Path) -> CliResult {
    let text = std::fs::read_to_string(path).map_err(|e| config_err(format!("{}: {e}", path.display())))?;
    let instances = from_jsonl(&text).map_err(gen_err)?;
    let mut bad = 0;
    for (line, (inst, raw)) in instances.iter().zip(text.lines().filter(|l| !l.trim().is_empty())).enumerate() {
        let relabeled =
            generator::GeneratedInstance { prediction: label(&inst.problem).map_err(gen_err)?, ..inst.clone() };
        if relabeled.to_json() != raw {
            bad += 1;
            println!("line {}: {} differs on relabeling", line + 1, inst.problem.id);
        }
    }
    println!("{} instances checked, {bad} mismatches", instances.len());
    if bad > 0 {
        return Err(CliError::mismatch(format!("{bad} instance(s) do not relabel identically")));
    }
    Ok(())
}
