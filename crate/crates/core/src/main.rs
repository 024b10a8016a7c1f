use std::path::PathBuf;
use std::process::ExitCode;

use clap::{CommandFactory, FromArgMatches, Parser, Subcommand};

mod cli;

use cli::CliError;

#[derive(Parser, Debug)]
#[command(name = "erotetic", about = "Question/answer reasoning engine, oracles and benchmark harness")]
struct Cli {
    /// TOML file of defaults; explicit flags win.
    // read by config::merge before clap sees the arguments
    #[allow(dead_code)]
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run the default procedure on premises and report the conclusion.
    Reason(cli::reason::ReasonArgs),
    /// Split alternatives on atoms before absorbing, and show the result.
    Inquire(cli::reason::InquireArgs),
    /// Label every problem in a file with the engine and the oracles.
    OracleCheck(cli::reason::OracleCheckArgs),
    /// List, show, render or export problems.
    Corpus(cli::corpus::CorpusArgs),
    /// Emit labeled synthetic problems, or re-check a generated file.
    Generate(cli::generate::GenerateArgs),
    #[command(subcommand)]
    Bench(cli::bench::BenchCommand),
    /// Wilcoxon signed-rank tests between two score files.
    Stats(cli::bench::StatsArgs),
    /// Scripted responder: answer one prompt from stdin.
    Respond(cli::respond::RespondArgs),
}

fn main() -> ExitCode {
    let args = match cli::config::merge(std::env::args().collect()) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(cli::EXIT_CONFIG);
        }
    };
    let version = format!("{} (update rule {})", env!("CARGO_PKG_VERSION"), erotetic::engine::UPDATE_RULE_REVISION);
    let version: &'static str = Box::leak(version.into_boxed_str());
    let matches = Cli::command().version(version).get_matches_from(args);
    let cli = match Cli::from_arg_matches(&matches) {
        Ok(c) => c,
        Err(e) => e.exit(),
    };
    let result: Result<(), CliError> = match cli.command {
        Command::Reason(a) => cli::reason::reason(a),
        Command::Inquire(a) => cli::reason::inquire(a),
        Command::OracleCheck(a) => cli::reason::oracle_check(a),
        Command::Corpus(a) => cli::corpus::corpus(a),
        Command::Generate(a) => cli::generate::generate(a),
        Command::Bench(c) => cli::bench::bench(c),
        Command::Stats(a) => cli::bench::stats(a),
        Command::Respond(a) => cli::respond::respond(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.error);
            ExitCode::from(e.code)
        }
    }
}
