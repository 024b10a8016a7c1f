//! Benchmark pipeline: run prompts through an external responder, score the
//! transcripts and aggregate rates with significance tests.

pub mod key;
pub mod report;
pub mod run;
pub mod score;
pub mod stats;

pub use key::{build_key, ScoreKey};
pub use report::{aggregate, Measure, Report};
pub use run::{run_bench, HarnessError, RunConfig, Status, TranscriptRecord};
pub use score::{score, Override, ScoreRecord};
pub use stats::{wilcoxon_signed_rank, wilcoxon_with, Wilcoxon, ZeroPolicy};
