//! Monadic quantified premises grounded over representative individuals.
//!
//! Each existential premise introduces one fresh individual; universals are
//! instantiated over every registered individual. Grounded atoms use the
//! `Pred@ind` form, e.g. `blue@x1`.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::engine::PremiseInterp;
use crate::logic::{Atom, Literal, LogicError, Question, State};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroundingError {
    #[error("relational predicate `{0}` is outside the monadic fragment")]
    Relational(String),
    #[error(transparent)]
    Logic(#[from] LogicError),
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum QuantPremise {
    Some(String, String),
    All(String, String),
}

impl QuantPremise {
    pub fn predicates(&self) -> [&str; 2] {
        match self {
            QuantPremise::Some(p, q) | QuantPremise::All(p, q) => [p, q],
        }
    }

    /// Parses `some p are q` / `all p are q`.
    pub fn parse(text: &str) -> Option<QuantPremise> {
        let words: Vec<&str> = text.split_whitespace().collect();
        match words.as_slice() {
            [q, p, "are", r] if q.eq_ignore_ascii_case("some") => {
                Some(QuantPremise::Some(p.to_string(), r.to_string()))
            }
            [q, p, "are", r] if q.eq_ignore_ascii_case("all") => Some(QuantPremise::All(p.to_string(), r.to_string())),
            _ => None,
        }
    }
}

impl fmt::Display for QuantPremise {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuantPremise::Some(p, q) => write!(f, "some {p} are {q}"),
            QuantPremise::All(p, q) => write!(f, "all {p} are {q}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Individual(pub String);

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Registry {
    pub individuals: Vec<Individual>,
    pub predicates: BTreeSet<String>,
    /// Unordered predicate pairs that occur in some premise.
    pub stated_pairs: BTreeSet<(String, String)>,
}

#[derive(Debug, Clone)]
pub struct Grounded {
    /// Grounded premises in source order.
    pub premises: Vec<PremiseInterp>,
    pub registry: Registry,
    pub warnings: Vec<String>,
}

impl Grounded {
    /// Order used for absorption: universal questions first, then existential
    /// answers, each group keeping source order.
    pub fn absorption_order(&self) -> Vec<PremiseInterp> {
        let (questions, answers): (Vec<_>, Vec<_>) =
            self.premises.iter().cloned().partition(|p| matches!(p, PremiseInterp::AsQuestion(_)));
        questions.into_iter().chain(answers).collect()
    }
}

pub fn grounded_atom(pred: &str, ind: &Individual) -> Result<Atom, LogicError> {
    Atom::new(format!("{pred}@{}", ind.0))
}

fn check_monadic(pred: &str) -> Result<(), GroundingError> {
    if pred.contains(['(', ',', '@']) {
        return Err(GroundingError::Relational(pred.to_string()));
    }
    Ok(())
}

fn unordered(p: &str, q: &str) -> (String, String) {
    if p <= q {
        (p.to_string(), q.to_string())
    } else {
        (q.to_string(), p.to_string())
    }
}

pub fn ground(premises: &[QuantPremise]) -> Result<Grounded, GroundingError> {
    let mut registry = Registry::default();
    for p in premises {
        let [a, b] = p.predicates();
        check_monadic(a)?;
        check_monadic(b)?;
        registry.predicates.insert(a.to_string());
        registry.predicates.insert(b.to_string());
        registry.stated_pairs.insert(unordered(a, b));
        if matches!(p, QuantPremise::Some(..)) {
            registry.individuals.push(Individual(format!("x{}", registry.individuals.len() + 1)));
        }
    }

    let mut out = Vec::new();
    let mut warnings = Vec::new();
    let mut next_ind = registry.individuals.iter();
    for p in premises {
        match p {
            QuantPremise::Some(a, b) => {
                let x = next_ind.next().expect("one individual per existential");
                let state = State::new([Literal::pos(grounded_atom(a, x)?), Literal::pos(grounded_atom(b, x)?)])?;
                out.push(PremiseInterp::AsAnswer(state));
            }
            QuantPremise::All(a, b) => {
                if registry.individuals.is_empty() {
                    warnings.push(format!("`{p}` is vacuous: no individuals to range over"));
                }
                for x in &registry.individuals {
                    let pa = grounded_atom(a, x)?;
                    let holds = State::new([Literal::pos(pa.clone()), Literal::pos(grounded_atom(b, x)?)])?;
                    let q = Question::new([holds, State::new([Literal::neg(pa)])?])?;
                    out.push(PremiseInterp::AsQuestion(q));
                }
            }
        }
    }
    Ok(Grounded { premises: out, registry, warnings })
}

/// `some P are Q` sentences that hold of one individual in every alternative
/// and were not already stated as a premise pair.
pub fn existential_readback(q: &Question, registry: &Registry) -> Vec<QuantPremise> {
    let preds: Vec<&String> = registry.predicates.iter().collect();
    let mut out = Vec::new();
    let holds = |pred: &str, x: &Individual| match grounded_atom(pred, x) {
        Ok(atom) => q.iter().all(|s| s.contains(&Literal::pos(atom.clone()))),
        Err(_) => false,
    };
    for (i, p) in preds.iter().enumerate() {
        for r in &preds[i + 1..] {
            if registry.stated_pairs.contains(&unordered(p, r)) {
                continue;
            }
            if registry.individuals.iter().any(|x| holds(p, x) && holds(r, x)) {
                out.push(QuantPremise::Some(p.to_string(), r.to_string()));
            }
        }
    }
    out
}
