//! Classical standards used to label predictions: propositional entailment,
//! monadic entailment, card-selection falsification, probabilistic coherence
//! of rankings and menu consistency of choices.

mod choice;
mod coherence;
mod monadic;
mod propositional;
mod selection;

pub use choice::{choice_consistency, ChoiceViolation, MenuChoice};
pub use coherence::{coherence_violations, CoherenceViolation, Hypothesis, RankingJudgment};
pub use monadic::{monadic_entails, MAX_PREDICATES};
pub use propositional::{entailed_literals, entails, satisfiable, MAX_ATOMS};
pub use selection::{wason_correct, Card, CardRule, SideKind};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("{found} distinct atoms exceed the truth-table cap of {cap}")]
    AtomCap { found: usize, cap: usize },
    #[error("{found} predicates exceed the monadic model cap of {cap}")]
    PredicateCap { found: usize, cap: usize },
    #[error("card `{0}` does not match its declared side kind")]
    CardKind(String),
    #[error("invalid menu choice: {0}")]
    Menu(String),
    #[error("ranking covers {ranks} hypotheses but {hypotheses} were given")]
    Ranking { ranks: usize, hypotheses: usize },
}
