//! Predicted judgments beyond plain inference: card selection, probability
//! rankings by support, and choices by priority overlap.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::engine::{interpret_premise, Premise, PremiseInterp};
use crate::logic::{Atom, Literal, State};
use crate::oracles::{Card, CardRule, Hypothesis, RankingJudgment};

/// Evidence atoms declared to speak for hypothesis atoms: `(evidence, hypothesis)`.
pub type Congruence = [(Literal, Literal)];

/// Cards whose visible face occurs positively in the rule's default question
/// `{{antecedent, consequent}, {~antecedent}}`.
pub fn wason_predicted(cards: &[Card], rule: &CardRule) -> Vec<String> {
    let (Ok(ante), Ok(cons)) = (Atom::new(rule.antecedent.clone()), Atom::new(rule.consequent.clone())) else {
        return Vec::new();
    };
    let premise = Premise::Conditional { antecedent: vec![Literal::pos(ante)], consequent: vec![Literal::pos(cons)] };
    let Ok(PremiseInterp::AsQuestion(q)) = interpret_premise(&premise) else {
        return Vec::new();
    };
    let positive: BTreeSet<&str> =
        q.iter().flat_map(|s| s.iter()).filter(|l| l.positive).map(|l| l.atom.as_str()).collect();
    cards.iter().filter(|c| positive.contains(c.visible.as_str())).map(|c| c.visible.clone()).collect()
}

/// Shared literals plus congruent evidence/hypothesis pairs.
pub fn support(evidence: &State, hypothesis: &State, congruence: &Congruence) -> usize {
    let congruent = congruence.iter().filter(|(e, h)| evidence.contains(e) && hypothesis.contains(h)).count();
    evidence.overlap(hypothesis) + congruent
}

/// Ranks hypotheses by descending support; equal support gives equal rank.
pub fn rank_hypotheses(evidence: &State, hypotheses: &[Hypothesis], congruence: &Congruence) -> RankingJudgment {
    let rank = hypotheses.iter().map(|h| support(evidence, &h.state, congruence) as u32).collect();
    RankingJudgment { hypotheses: hypotheses.to_vec(), rank }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecisionOption {
    pub name: String,
    pub features: State,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DecisionQuestion {
    pub options: Vec<DecisionOption>,
    pub priorities: State,
    /// Features an inquiry adds to an option (keyed by option name).
    pub expansions: BTreeMap<String, State>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ChoiceMode {
    pub expanded: bool,
    pub decoy_sensitive: bool,
    pub decoy_bonus: usize,
}

impl Default for ChoiceMode {
    fn default() -> Self {
        ChoiceMode { expanded: false, decoy_sensitive: false, decoy_bonus: 1 }
    }
}

impl ChoiceMode {
    pub fn expanded() -> Self {
        ChoiceMode { expanded: true, ..Default::default() }
    }

    pub fn decoy() -> Self {
        ChoiceMode { decoy_sensitive: true, ..Default::default() }
    }

    pub fn label(&self) -> &'static str {
        match (self.expanded, self.decoy_sensitive) {
            (false, false) => "default",
            (true, false) => "expanded",
            (false, true) => "decoy",
            (true, true) => "expanded+decoy",
        }
    }

    pub fn from_label(text: &str) -> Option<ChoiceMode> {
        let (expanded, decoy_sensitive) = match text {
            "default" => (false, false),
            "expanded" => (true, false),
            "decoy" => (false, true),
            "expanded+decoy" | "decoy+expanded" => (true, true),
            _ => return None,
        };
        Some(ChoiceMode { expanded, decoy_sensitive, decoy_bonus: 1 })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Choice {
    Option(String),
    /// Tied best options, in menu order.
    Indifferent(Vec<String>),
}

impl Choice {
    pub fn names(&self) -> Vec<String> {
        match self {
            Choice::Option(o) => vec![o.clone()],
            Choice::Indifferent(os) => os.clone(),
        }
    }
}

impl fmt::Display for Choice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Choice::Option(o) => f.write_str(o),
            Choice::Indifferent(os) => write!(f, "indifferent({})", os.join(",")),
        }
    }
}

fn effective_features(d: &DecisionQuestion, o: &DecisionOption, mode: ChoiceMode) -> BTreeSet<Literal> {
    let mut feats = o.features.literals().clone();
    if mode.expanded {
        if let Some(extra) = d.expansions.get(&o.name) {
            feats.extend(extra.iter().cloned());
        }
    }
    feats
}

/// Score of every option, in menu order.
pub fn scores(d: &DecisionQuestion, mode: ChoiceMode) -> Vec<(String, usize)> {
    let feats: Vec<BTreeSet<Literal>> = d.options.iter().map(|o| effective_features(d, o, mode)).collect();
    d.options
        .iter()
        .zip(&feats)
        .map(|(o, f)| {
            let mut score = f.iter().filter(|l| d.priorities.contains(l)).count();
            if mode.decoy_sensitive && feats.iter().any(|g| g.len() < f.len() && g.is_subset(f)) {
                score += mode.decoy_bonus;
            }
            (o.name.clone(), score)
        })
        .collect()
}

pub fn choose(d: &DecisionQuestion, mode: ChoiceMode) -> Choice {
    let scored = scores(d, mode);
    let best = scored.iter().map(|(_, s)| *s).max().unwrap_or(0);
    let mut top: Vec<String> = scored.into_iter().filter(|(_, s)| *s == best).map(|(n, _)| n).collect();
    if top.len() == 1 {
        Choice::Option(top.remove(0))
    } else {
        Choice::Indifferent(top)
    }
}
