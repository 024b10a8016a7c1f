use std::path::PathBuf;

use clap::Args;

use erotetic::corpus::{render_frame, serialize_corpus, serialize_problem, Condition, Template};
use erotetic::generator::label;

use super::{config_err, find, load_problems, CliResult};

#[derive(Args, Debug)]
#[command(group(clap::ArgGroup::new("action").args(["list", "show", "render", "export"])))]
pub struct CorpusArgs {
    /// Corpus file; the built-in corpus when omitted.
    #[arg(long, value_name = "FILE")]
    corpus: Option<PathBuf>,
    /// One line per problem: id, kind, predicted answer, fallacy flag (default).
    #[arg(long)]
    list: bool,
    /// Print one problem in the corpus format.
    #[arg(long, value_name = "ID")]
    show: Option<String>,
    /// Print the prompt sent for one problem.
    #[arg(long, value_name = "ID")]
    render: Option<String>,
    /// Print the whole corpus in canonical form.
    #[arg(long)]
    export: bool,
    #[arg(long, default_value = "production")]
    condition: String,
    #[arg(long, default_value = "none")]
    template: String,
    /// Menu name for decision problems; the first menu when omitted.
    #[arg(long)]
    frame: Option<String>,
}

pub fn corpus(args: CorpusArgs) -> CliResult {
    let problems = load_problems(args.corpus.as_deref())?;
    if let Some(id) = &args.show {
        print!("{}", serialize_problem(find(&problems, id)?));
        return Ok(());
    }
    if let Some(id) = &args.render {
        let p = find(&problems, id)?;
        let cond = Condition::parse(&args.condition)
            .ok_or_else(|| config_err(format!("unknown condition `{}`", args.condition)))?;
        let tpl = Template::parse(&args.template)
            .ok_or_else(|| config_err(format!("unknown template `{}`", args.template)))?;
        let frame = args.frame.clone().or_else(|| p.frames().into_iter().next().flatten());
        let prompt = render_frame(p, frame.as_deref(), cond, tpl).map_err(config_err)?;
        println!("{prompt}");
        return Ok(());
    }
    if args.export {
        print!("{}", serialize_corpus(&problems));
        return Ok(());
    }
    for p in &problems {
        let rec = label(p).map_err(|e| anyhow::anyhow!("{}: {e}", p.id))?;
        let flag = if rec.fallacy { "fallacy" } else { "-" };
        println!("{}\t{}\t{}\t{flag}", p.id, rec.kind, rec.prediction);
    }
    Ok(())
}
