//! Problem documents, prompt rendering and the built-in problem set.

pub mod analysis;
pub mod dsl;
pub mod problem;
pub mod render;

pub use analysis::{correct_answer, predict, sanctioned, AnalysisError};
pub use dsl::{parse_corpus, parse_problem, serialize_corpus, serialize_problem, ParseError};
pub use problem::{Ask, Body, Menu, Prediction, Problem, ProblemKind};
pub use render::{render_frame, render_prompt, Condition, RenderError, Template};

pub const BUILTIN_SOURCE: &str = include_str!("../../corpus/builtin.etr");

/// The problems printed in the paper.
pub fn builtin() -> Vec<Problem> {
    parse_corpus(BUILTIN_SOURCE).expect("built-in corpus parses")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_expectations_match_fresh_runs() {
        let corpus = builtin();
        assert!(corpus.len() >= 10);
        for p in &corpus {
            let fresh = predict(p).unwrap();
            assert_eq!(p.expected.as_ref(), Some(&fresh), "{}", p.id);
        }
    }

    #[test]
    fn builtin_round_trips() {
        let corpus = builtin();
        assert_eq!(parse_corpus(&serialize_corpus(&corpus)).unwrap(), corpus);
    }

    #[test]
    fn every_frame_renders_in_both_conditions() {
        for p in builtin() {
            for f in p.frames() {
                for c in Condition::ALL {
                    render_frame(&p, f.as_deref(), c, Template::None).unwrap_or_else(|e| panic!("{}: {e}", p.id));
                }
            }
        }
    }
}
