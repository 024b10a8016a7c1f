//! Question/answer update dynamics.
//!
//! Premises are interpreted either as questions (sets of alternatives) or as
//! categorical answers. The running question is updated by [`absorb`]: an
//! answer keeps only the alternatives it overlaps with most, a question is
//! combined by consistent pairwise union. [`inquire`] splits alternatives on
//! an undecided atom, and [`equilibrium_conclusions`] keeps only conclusions
//! that survive every such inquiry.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::logic::{Atom, Literal, LogicError, Question, State};

/// Revision of the update rule. Bumped whenever absorb/inquire semantics change.
pub const UPDATE_RULE_REVISION: &str = "r1";

pub const DEFAULT_ATOM_CAP: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error(transparent)]
    Logic(#[from] LogicError),
    #[error("conditional antecedent must be a single literal, found `{0}`")]
    ComplexAntecedent(String),
    #[error("absurdity: every alternative became inconsistent after absorbing {0}")]
    Absurd(String),
    #[error("{found} distinct atoms exceed the cap of {cap}; the equilibrium search is exponential")]
    AtomCap { found: usize, cap: usize },
}

/// A premise as written in the problem language.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Premise {
    /// `(a & b) | (c & d)`; two or more disjuncts.
    Disjunction(Vec<Vec<Literal>>),
    /// `if a then b & c`. The antecedent is kept as written so that
    /// unsupported shapes can be reported by [`interpret_premise`].
    Conditional { antecedent: Vec<Literal>, consequent: Vec<Literal> },
    /// `a & b`
    Categorical(Vec<Literal>),
}

fn conj_text(lits: &[Literal]) -> String {
    lits.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(" & ")
}

impl fmt::Display for Premise {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Premise::Disjunction(ds) => {
                let parts: Vec<String> =
                    ds.iter().map(|d| if d.len() > 1 { format!("({})", conj_text(d)) } else { conj_text(d) }).collect();
                f.write_str(&parts.join(" | "))
            }
            Premise::Conditional { antecedent, consequent } => {
                write!(f, "if {} then {}", conj_text(antecedent), conj_text(consequent))
            }
            Premise::Categorical(c) => f.write_str(&conj_text(c)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum PremiseInterp {
    AsQuestion(Question),
    AsAnswer(State),
}

impl fmt::Display for PremiseInterp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PremiseInterp::AsQuestion(q) => write!(f, "question {q}"),
            PremiseInterp::AsAnswer(s) => write!(f, "answer {s}"),
        }
    }
}

pub fn interpret_premise(p: &Premise) -> Result<PremiseInterp, EngineError> {
    match p {
        Premise::Categorical(c) => Ok(PremiseInterp::AsAnswer(State::new(c.iter().cloned())?)),
        Premise::Disjunction(ds) => {
            let states = ds.iter().map(|d| State::new(d.iter().cloned())).collect::<Result<Vec<_>, _>>()?;
            let q = Question::new(states)?;
            Ok(PremiseInterp::AsQuestion(q))
        }
        Premise::Conditional { antecedent, consequent } => {
            let [ante] = antecedent.as_slice() else {
                return Err(EngineError::ComplexAntecedent(conj_text(antecedent)));
            };
            let consequent = State::new(consequent.iter().cloned())?;
            let mut alts = Vec::with_capacity(2);
            // `if a then ~a` leaves only the non-antecedent alternative
            if let Some(s) = consequent.with(ante.clone()) {
                alts.push(s);
            }
            alts.push(State::new([ante.negated()])?);
            Ok(PremiseInterp::AsQuestion(Question::new(alts)?))
        }
    }
}

/// Updates the running question with the next interpreted premise.
pub fn absorb(current: Option<&Question>, input: &PremiseInterp) -> Result<Question, EngineError> {
    let Some(q) = current else {
        return Ok(match input {
            PremiseInterp::AsQuestion(q) => q.clone(),
            PremiseInterp::AsAnswer(s) => Question::single(s.clone()),
        });
    };
    let merged: BTreeSet<State> = match input {
        PremiseInterp::AsAnswer(answer) => {
            let best = q.iter().map(|s| s.overlap(answer)).max().unwrap_or(0);
            q.iter().filter(|s| best == 0 || s.overlap(answer) == best).filter_map(|s| s.merge(answer)).collect()
        }
        PremiseInterp::AsQuestion(other) => {
            q.iter().flat_map(|s| other.iter().filter_map(move |t| s.merge(t))).collect()
        }
    };
    Question::new(merged).map_err(|_| EngineError::Absurd(input.to_string()))
}

/// Splits every alternative that is silent on `atom` into an `atom` and a
/// `~atom` copy.
pub fn inquire(q: &Question, atom: &Atom) -> Question {
    let mut out = BTreeSet::new();
    for s in q.iter() {
        if s.decides(atom) {
            out.insert(s.clone());
        } else {
            out.extend(s.with(Literal::pos(atom.clone())));
            out.extend(s.with(Literal::neg(atom.clone())));
        }
    }
    Question::new(out).expect("inquiry never removes alternatives")
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Conclusion {
    Follows(State),
    NothingFollows,
}

impl Conclusion {
    pub fn literals(&self) -> BTreeSet<Literal> {
        match self {
            Conclusion::Follows(s) => s.literals().clone(),
            Conclusion::NothingFollows => BTreeSet::new(),
        }
    }
}

impl fmt::Display for Conclusion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Conclusion::Follows(s) => f.write_str(&s.conj_text()),
            Conclusion::NothingFollows => f.write_str("nothing"),
        }
    }
}

/// Literals common to every alternative, minus those asserted categorically.
pub fn what_follows(q: &Question, asserted: &BTreeSet<Literal>) -> Conclusion {
    let mut alts = q.iter();
    let first = alts.next().expect("questions are non-empty");
    let common: BTreeSet<Literal> =
        first.iter().filter(|l| !asserted.contains(*l)).filter(|l| q.iter().all(|s| s.contains(l))).cloned().collect();
    if common.is_empty() {
        Conclusion::NothingFollows
    } else {
        // subset of a consistent state
        Conclusion::Follows(State::new(common).expect("subset of a consistent state"))
    }
}

pub fn follows_query(q: &Question, target: &State) -> bool {
    q.iter().all(|s| s.is_superset(target))
}

/// Literals of every categorical premise.
pub fn asserted_literals(interps: &[PremiseInterp]) -> BTreeSet<Literal> {
    interps
        .iter()
        .filter_map(|i| match i {
            PremiseInterp::AsAnswer(s) => Some(s.iter().cloned()),
            PremiseInterp::AsQuestion(_) => None,
        })
        .flatten()
        .collect()
}

pub fn premise_atoms(interps: &[PremiseInterp]) -> BTreeSet<Atom> {
    let mut atoms = BTreeSet::new();
    for i in interps {
        match i {
            PremiseInterp::AsQuestion(q) => atoms.extend(q.atoms()),
            PremiseInterp::AsAnswer(s) => atoms.extend(s.atoms().cloned()),
        }
    }
    atoms
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StepKind {
    Absorb,
    Inquire,
}

impl fmt::Display for StepKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StepKind::Absorb => "absorb",
            StepKind::Inquire => "inquire",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStep {
    pub kind: StepKind,
    pub before: Option<Question>,
    pub input: String,
    pub after: Question,
}

/// Step-by-step record of a derivation. Consecutive steps chain: the
/// `before` of each step is the `after` of the previous one.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Trace {
    pub steps: Vec<TraceStep>,
}

impl Trace {
    pub fn is_chained(&self) -> bool {
        self.steps.windows(2).all(|w| w[1].before.as_ref() == Some(&w[0].after))
    }
}

impl fmt::Display for Trace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, step) in self.steps.iter().enumerate() {
            writeln!(f, "{:>3}. {} {}", i + 1, step.kind, step.input)?;
            writeln!(f, "     -> {}", step.after)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct Run {
    pub question: Question,
    pub trace: Trace,
}

/// Absorbs the interpretations in order.
pub fn run(interps: &[PremiseInterp]) -> Result<Option<Run>, EngineError> {
    run_with_inquiry(interps, &[])
}

/// Like [`run`], but every question interpretation is first inquired on each
/// atom of `split` before it is absorbed. Returns `None` for an empty premise
/// list.
pub fn run_with_inquiry(interps: &[PremiseInterp], split: &[Atom]) -> Result<Option<Run>, EngineError> {
    let mut trace = Trace::default();
    let mut current: Option<Question> = None;
    for interp in interps {
        let input = match interp {
            PremiseInterp::AsQuestion(q) if !split.is_empty() => {
                PremiseInterp::AsQuestion(split.iter().fold(q.clone(), |acc, a| inquire(&acc, a)))
            }
            other => other.clone(),
        };
        let next = absorb(current.as_ref(), &input)?;
        trace.steps.push(TraceStep {
            kind: StepKind::Absorb,
            before: current.take(),
            input: input.to_string(),
            after: next.clone(),
        });
        current = Some(next);
    }
    Ok(current.map(|question| Run { question, trace }))
}

#[derive(Debug, Clone, Copy)]
pub struct EquilibriumConfig {
    pub atom_cap: usize,
    /// Largest inquiry set considered; `None` means every atom.
    pub atom_budget: Option<usize>,
}

impl Default for EquilibriumConfig {
    fn default() -> Self {
        EquilibriumConfig { atom_cap: DEFAULT_ATOM_CAP, atom_budget: None }
    }
}

/// Conclusions that survive every inquiry over subsets of the premise atoms.
///
/// Runs that end in absurdity impose no constraint. Split order does not
/// matter (inquiry commutes), so only subsets are enumerated, smallest first,
/// stopping as soon as nothing survives.
pub fn equilibrium_conclusions(
    interps: &[PremiseInterp],
    cfg: EquilibriumConfig,
) -> Result<BTreeSet<Literal>, EngineError> {
    let atoms: Vec<Atom> = premise_atoms(interps).into_iter().collect();
    if atoms.len() > cfg.atom_cap {
        return Err(EngineError::AtomCap { found: atoms.len(), cap: cfg.atom_cap });
    }
    let asserted = asserted_literals(interps);
    let budget = cfg.atom_budget.unwrap_or(atoms.len()).min(atoms.len());
    let mut masks: Vec<u32> = (0..1u32 << atoms.len()).filter(|m| m.count_ones() as usize <= budget).collect();
    masks.sort_by_key(|m| (m.count_ones(), *m));

    let mut surviving: Option<BTreeSet<Literal>> = None;
    let mut last_err = None;
    for mask in masks {
        let split: Vec<Atom> =
            atoms.iter().enumerate().filter(|(i, _)| mask & (1 << i) != 0).map(|(_, a)| a.clone()).collect();
        let found = match run_with_inquiry(interps, &split) {
            Ok(Some(r)) => what_follows(&r.question, &asserted).literals(),
            Ok(None) => BTreeSet::new(),
            Err(e @ EngineError::Absurd(_)) => {
                last_err = Some(e);
                continue;
            }
            Err(e) => return Err(e),
        };
        let acc = match surviving {
            Some(prev) => prev.intersection(&found).cloned().collect(),
            None => found,
        };
        if acc.is_empty() {
            return Ok(acc);
        }
        surviving = Some(acc);
    }
    match (surviving, last_err) {
        (Some(acc), _) => Ok(acc),
        (None, Some(e)) => Err(e),
        (None, None) => Ok(BTreeSet::new()),
    }
}
