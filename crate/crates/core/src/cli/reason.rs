use std::collections::BTreeSet;
use std::path::PathBuf;

use clap::Args;

use erotetic::corpus::analysis::interpretations;
use erotetic::corpus::dsl::{parse_conj, parse_expr};
use erotetic::corpus::{predict, sanctioned, Body, Prediction, Problem};
use erotetic::engine::{
    asserted_literals, equilibrium_conclusions, follows_query, run, run_with_inquiry, what_follows, Conclusion,
    EquilibriumConfig,
};
use erotetic::generator::label;
use erotetic::grounding::ground;
use erotetic::oracles::{entails, monadic_entails};
use erotetic::{Atom, Literal, PremiseInterp, State};

use super::{config_err, load_problems, CliError, CliResult};

#[derive(Args, Debug)]
pub struct Premises {
    /// Corpus file (`.etr` or generated `.jsonl`).
    #[arg(conflicts_with = "premise")]
    file: Option<PathBuf>,
    /// Inline premise expression, e.g. `(ace & queen) | (king & jack)`. Repeatable.
    #[arg(long, value_name = "EXPR")]
    premise: Vec<String>,
}

impl Premises {
    fn load(&self) -> Result<Vec<Problem>, CliError> {
        if !self.premise.is_empty() {
            let mut premises = Vec::new();
            for (i, text) in self.premise.iter().enumerate() {
                let p = parse_expr(text)
                    .map_err(|e| config_err(format!("premise {}, column {}: {}", i + 1, e.offset + 1, e.message)))?;
                premises.push(p);
            }
            return Ok(vec![Problem::new("inline", Body::Inference { premises })]);
        }
        match &self.file {
            Some(f) => load_problems(Some(f)),
            None => Err(config_err("give a corpus file or at least one --premise")),
        }
    }
}

#[derive(Args, Debug)]
pub struct ReasonArgs {
    #[command(flatten)]
    input: Premises,
    /// Print each absorption step.
    #[arg(long)]
    trace: bool,
    /// Also check the conclusion against every inquiry.
    #[arg(long)]
    equilibrium: bool,
    /// Ask whether a conjunction follows instead of producing a conclusion.
    #[arg(long, value_name = "CONJ")]
    query: Option<String>,
    /// Largest number of atoms inquired on at once.
    #[arg(long, value_name = "N")]
    budget: Option<usize>,
}

fn lit_text(lits: &BTreeSet<Literal>) -> String {
    if lits.is_empty() {
        "nothing".into()
    } else {
        State::new(lits.iter().cloned()).map(|s| s.conj_text()).unwrap_or_else(|_| "absurd".into())
    }
}

fn prefix(many: bool, p: &Problem) -> String {
    if many {
        format!("{}: ", p.id)
    } else {
        String::new()
    }
}

pub fn reason(args: ReasonArgs) -> CliResult {
    let problems = args.input.load()?;
    let query = match &args.query {
        Some(q) => {
            Some(parse_conj(q).map_err(|e| config_err(format!("--query, column {}: {}", e.offset + 1, e.message)))?)
        }
        None => None,
    };
    let many = problems.len() > 1;
    for p in &problems {
        let pre = prefix(many, p);
        match &p.body {
            Body::Inference { premises } => {
                let interps = interpretations(premises).map_err(|e| anyhow::anyhow!("{}: {e}", p.id))?;
                reason_inference(&pre, &args, &interps, query.as_ref())?;
            }
            Body::Quantified { premises } => {
                if args.equilibrium || query.is_some() {
                    return Err(config_err(format!(
                        "{}: --equilibrium and --query apply to propositional premises only",
                        p.id
                    )));
                }
                if args.trace {
                    let g = ground(premises).map_err(|e| anyhow::anyhow!("{}: {e}", p.id))?;
                    if let Some(r) = run(&g.absorption_order()).map_err(|e| anyhow::anyhow!("{}: {e}", p.id))? {
                        print!("{}", r.trace);
                    }
                }
                let Prediction::Quantified(readback) = predict(p).map_err(|e| anyhow::anyhow!("{}: {e}", p.id))? else {
                    unreachable!("quantified problems predict quantified answers")
                };
                println!("{pre}{}", Prediction::Quantified(readback.clone()));
                for r in &readback {
                    let valid = monadic_entails(premises, r).map_err(|e| anyhow::anyhow!("{}: {e}", p.id))?;
                    if !valid {
                        println!("warning: `{r}` is not classically valid");
                    }
                }
            }
            _ => {
                if args.equilibrium || query.is_some() || args.trace {
                    return Err(config_err(format!("{}: --trace, --equilibrium and --query need premises", p.id)));
                }
                let pred = predict(p).map_err(|e| anyhow::anyhow!("{}: {e}", p.id))?;
                println!("{pre}{pred}");
                if !sanctioned(p, &pred).map_err(|e| anyhow::anyhow!("{}: {e}", p.id))? {
                    println!("warning: not classically sanctioned");
                }
            }
        }
    }
    Ok(())
}

fn reason_inference(pre: &str, args: &ReasonArgs, interps: &[PremiseInterp], query: Option<&State>) -> CliResult {
    let r = run(interps).map_err(|e| anyhow::anyhow!("{e}"))?;
    if args.trace {
        if let Some(r) = &r {
            print!("{}", r.trace);
        }
    }
    if let Some(target) = query {
        let etr = r.as_ref().is_some_and(|r| follows_query(&r.question, target));
        let valid = entails(interps, target).map_err(|e| anyhow::anyhow!("{e}"))?;
        println!("{pre}{}", if etr { "follows" } else { "does not follow" });
        match (etr, valid) {
            (true, false) => println!("warning: not classically entailed; this is a fallacy"),
            (false, true) => println!("note: classically entailed"),
            _ => {}
        }
        return Ok(());
    }
    let conclusion = match &r {
        Some(r) => what_follows(&r.question, &asserted_literals(interps)),
        None => Conclusion::NothingFollows,
    };
    let valid = match &conclusion {
        Conclusion::Follows(s) => entails(interps, s).map_err(|e| anyhow::anyhow!("{e}"))?,
        Conclusion::NothingFollows => true,
    };
    if args.equilibrium {
        let cfg = EquilibriumConfig { atom_budget: args.budget, ..EquilibriumConfig::default() };
        let eq = equilibrium_conclusions(interps, cfg).map_err(|e| anyhow::anyhow!("{e}"))?;
        let stable = conclusion.literals().is_subset(&eq);
        println!(
            "{pre}{conclusion} ({} equilibrium; classically {})",
            if stable { "in" } else { "NOT in" },
            if valid { "valid" } else { "invalid" }
        );
        println!("equilibrium conclusions: {}", lit_text(&eq));
    } else {
        println!("{pre}{conclusion}");
    }
    if !valid {
        println!("warning: not classically entailed; this is a fallacy");
    }
    Ok(())
}

#[derive(Args, Debug)]
pub struct InquireArgs {
    #[command(flatten)]
    input: Premises,
    /// Atom to inquire on. Repeatable.
    #[arg(long, required = true, value_name = "ATOM")]
    atom: Vec<String>,
}

pub fn inquire(args: InquireArgs) -> CliResult {
    let split =
        args.atom.iter().map(|a| Atom::new(a.as_str()).map_err(config_err)).collect::<Result<Vec<Atom>, CliError>>()?;
    let problems = args.input.load()?;
    let many = problems.len() > 1;
    for p in &problems {
        let Body::Inference { premises } = &p.body else { continue };
        let interps = interpretations(premises).map_err(|e| anyhow::anyhow!("{}: {e}", p.id))?;
        if many {
            println!("== {}", p.id);
        }
        match run_with_inquiry(&interps, &split) {
            Ok(Some(r)) => {
                print!("{}", r.trace);
                println!("conclusion: {}", what_follows(&r.question, &asserted_literals(&interps)));
            }
            Ok(None) => println!("conclusion: nothing"),
            Err(e) => println!("{e}"),
        }
    }
    Ok(())
}

#[derive(Args, Debug)]
pub struct OracleCheckArgs {
    /// Corpus file; the built-in corpus when omitted.
    file: Option<PathBuf>,
}

pub fn oracle_check(args: OracleCheckArgs) -> CliResult {
    let problems = load_problems(args.file.as_deref())?;
    let mut mismatches = 0;
    for p in &problems {
        let rec = label(p).map_err(|e| anyhow::anyhow!("{}: {e}", p.id))?;
        let verdict = if rec.fallacy { "fallacy" } else { "sanctioned" };
        println!("{}\t{}\tpredicted: {}\tcorrect: {}\t{verdict}", p.id, rec.kind, rec.prediction, rec.correct);
        if let Some(exp) = &p.expected {
            if exp.to_string() != rec.prediction {
                mismatches += 1;
                println!("MISMATCH {}: expected {exp}", p.id);
            }
        }
    }
    if mismatches > 0 {
        return Err(CliError::mismatch(format!("{mismatches} expectation(s) differ from the engine")));
    }
    Ok(())
}
