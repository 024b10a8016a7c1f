//! Question/answer reasoning engine.
//!
//! Premises are taken on board as questions (sets of alternative states)
//! and later premises as maximally strong answers. The crate pairs that
//! engine with classical oracles, a generator of fallacy-prone problems and
//! a harness for benchmarking external responders.

pub mod corpus;
pub mod engine;
pub mod generator;
pub mod grounding;
pub mod harness;
pub mod judgment;
pub mod logic;
pub mod oracles;

pub use engine::{Conclusion, EngineError, Premise, PremiseInterp};
pub use logic::{Atom, Literal, Question, State};
