use std::io::Read;
use std::path::PathBuf;

use clap::{Args, ValueEnum};

use erotetic::corpus::{render_frame, Condition, Template};
use erotetic::harness::key::{answer_text, problem_key, verdict_text};
use erotetic::harness::run::CORPUS_ENV;

use super::{load_problems, CliError, CliResult};

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Mode {
    /// Answer as the default reasoning procedure does.
    Etr,
    /// Answer classically.
    Oracle,
    /// Print the prompt back.
    Echo,
}

#[derive(Args, Debug)]
pub struct RespondArgs {
    #[arg(long, value_enum)]
    mode: Mode,
    /// Corpus the prompt was rendered from; falls back to the file named by
    /// the harness environment, then the built-in corpus.
    #[arg(long, value_name = "FILE")]
    corpus: Option<PathBuf>,
}

pub fn respond(args: RespondArgs) -> CliResult {
    let mut prompt = String::new();
    std::io::stdin().read_to_string(&mut prompt).map_err(|e| anyhow::anyhow!("reading stdin: {e}"))?;
    let prompt = prompt.trim_end();
    if let Mode::Echo = args.mode {
        println!("{prompt}");
        return Ok(());
    }
    let corpus = args.corpus.clone().or_else(|| std::env::var_os(CORPUS_ENV).map(PathBuf::from));
    let problems = load_problems(corpus.as_deref())?;
    for p in &problems {
        for frame in p.frames() {
            for cond in Condition::ALL {
                for tpl in Template::ALL {
                    let Ok(text) = render_frame(p, frame.as_deref(), cond, tpl) else { continue };
                    if text.trim_end() != prompt {
                        continue;
                    }
                    let key = problem_key(p).map_err(|e| anyhow::anyhow!("{e}"))?;
                    let fk = key.frames.iter().find(|f| f.frame == frame).expect("key covers every frame");
                    let etr = matches!(args.mode, Mode::Etr);
                    let reply = match cond {
                        Condition::Production => {
                            answer_text(p, frame.as_deref(), if etr { &fk.etr } else { &fk.correct })
                        }
                        Condition::Query => {
                            verdict_text(if etr { fk.etr_verdict } else { fk.correct_verdict }).to_string()
                        }
                    };
                    println!("{reply}");
                    return Ok(());
                }
            }
        }
    }
    Err(CliError::from(anyhow::anyhow!("prompt matches no problem in the corpus")))
}
