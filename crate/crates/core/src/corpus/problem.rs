use std::collections::BTreeMap;
use std::fmt;

use crate::engine::{Conclusion, Premise};
use crate::grounding::QuantPremise;
use crate::judgment::{Choice, ChoiceMode, DecisionOption, DecisionQuestion};
use crate::logic::{Literal, State};
use crate::oracles::{Card, CardRule, Hypothesis};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ProblemKind {
    Inference,
    Quantified,
    Selection,
    Probability,
    Decision,
}

impl ProblemKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            ProblemKind::Inference => "inference",
            ProblemKind::Quantified => "quantified",
            ProblemKind::Selection => "selection",
            ProblemKind::Probability => "probability",
            ProblemKind::Decision => "decision",
        }
    }

    pub fn parse(text: &str) -> Option<ProblemKind> {
        Some(match text {
            "inference" => ProblemKind::Inference,
            "quantified" => ProblemKind::Quantified,
            "selection" => ProblemKind::Selection,
            "probability" => ProblemKind::Probability,
            "decision" => ProblemKind::Decision,
            _ => return None,
        })
    }
}

impl fmt::Display for ProblemKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Menu {
    pub name: String,
    pub options: Vec<DecisionOption>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Body {
    Inference {
        premises: Vec<Premise>,
    },
    Quantified {
        premises: Vec<QuantPremise>,
    },
    Selection {
        cards: Vec<Card>,
        rule: CardRule,
    },
    Probability {
        evidence: State,
        hypotheses: Vec<Hypothesis>,
        congruence: Vec<(Literal, Literal)>,
    },
    Decision {
        menus: Vec<Menu>,
        priorities: State,
        expansions: BTreeMap<String, State>,
        /// Choice mode per menu; menus without an entry use the default mode.
        modes: BTreeMap<String, ChoiceMode>,
    },
}

impl Body {
    pub fn kind(&self) -> ProblemKind {
        match self {
            Body::Inference { .. } => ProblemKind::Inference,
            Body::Quantified { .. } => ProblemKind::Quantified,
            Body::Selection { .. } => ProblemKind::Selection,
            Body::Probability { .. } => ProblemKind::Probability,
            Body::Decision { .. } => ProblemKind::Decision,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Ask {
    Production,
    /// `None` asks about the expected prediction itself.
    Query(Option<State>),
}

/// Predicted answer, typed by problem kind.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Prediction {
    Inference(Conclusion),
    Quantified(Vec<QuantPremise>),
    Selection(Vec<String>),
    /// `(hypothesis name, rank)`; higher rank means more probable.
    Ranking(Vec<(String, u32)>),
    /// `(menu name, choice)` in menu order.
    Decision(Vec<(String, Choice)>),
}

impl Prediction {
    pub fn kind(&self) -> ProblemKind {
        match self {
            Prediction::Inference(_) => ProblemKind::Inference,
            Prediction::Quantified(_) => ProblemKind::Quantified,
            Prediction::Selection(_) => ProblemKind::Selection,
            Prediction::Ranking(_) => ProblemKind::Probability,
            Prediction::Decision(_) => ProblemKind::Decision,
        }
    }
}

impl fmt::Display for Prediction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Prediction::Inference(c) => write!(f, "{c}"),
            Prediction::Quantified(rs) if rs.is_empty() => f.write_str("nothing"),
            Prediction::Quantified(rs) => f.write_str(&rs.iter().map(|r| r.to_string()).collect::<Vec<_>>().join("; ")),
            Prediction::Selection(cs) if cs.is_empty() => f.write_str("none"),
            Prediction::Selection(cs) => f.write_str(&cs.join(" ")),
            Prediction::Ranking(rs) => {
                f.write_str(&rs.iter().map(|(n, r)| format!("{n}={r}")).collect::<Vec<_>>().join(" "))
            }
            Prediction::Decision(cs) => {
                let parts: Vec<String> = cs.iter().map(|(m, c)| format!("{m}={}", c.names().join("|"))).collect();
                f.write_str(&parts.join(" "))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Problem {
    pub id: String,
    pub body: Body,
    pub english: Option<String>,
    /// Surface wording for atoms, predicates, cards, hypotheses and options.
    pub phrases: BTreeMap<String, String>,
    pub ask: Ask,
    pub expected: Option<Prediction>,
    /// Responses can only be judged by hand (e.g. free-text procedures).
    pub manual_review: bool,
}

impl Problem {
    pub fn new(id: impl Into<String>, body: Body) -> Self {
        Problem {
            id: id.into(),
            body,
            english: None,
            phrases: BTreeMap::new(),
            ask: Ask::Production,
            expected: None,
            manual_review: false,
        }
    }

    pub fn kind(&self) -> ProblemKind {
        self.body.kind()
    }

    /// Menu names for decision problems; every other kind has one frame.
    pub fn frames(&self) -> Vec<Option<String>> {
        match &self.body {
            Body::Decision { menus, .. } => menus.iter().map(|m| Some(m.name.clone())).collect(),
            _ => vec![None],
        }
    }

    pub fn decision_question(&self, menu: &Menu) -> Option<DecisionQuestion> {
        match &self.body {
            Body::Decision { priorities, expansions, .. } => Some(DecisionQuestion {
                options: menu.options.clone(),
                priorities: priorities.clone(),
                expansions: expansions.clone(),
            }),
            _ => None,
        }
    }
}
