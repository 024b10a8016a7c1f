//! Atoms, literals, states and questions.
//!
//! A [`State`] is a consistent set of literals; a [`Question`] is a
//! non-empty set of distinct states, each one an alternative situation the
//! reasoner is entertaining. All collections are ordered so that iteration,
//! display and serialization are deterministic.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LogicError {
    #[error("empty atom identifier")]
    EmptyAtom,
    #[error("inconsistent state: `{0}` occurs with both polarities")]
    Inconsistent(Atom),
    #[error("a question needs at least one alternative")]
    EmptyQuestion,
}

/// A propositional atom such as `ace` or, once grounded, `blue@x1`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Atom(String);

impl Atom {
    pub fn new(id: impl Into<String>) -> Result<Self, LogicError> {
        let id = id.into();
        if id.is_empty() {
            return Err(LogicError::EmptyAtom);
        }
        Ok(Atom(id))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// A signed atom.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    pub atom: Atom,
    pub positive: bool,
}

impl Literal {
    pub fn pos(atom: Atom) -> Self {
        Literal { atom, positive: true }
    }

    pub fn neg(atom: Atom) -> Self {
        Literal { atom, positive: false }
    }

    /// Parses `ace` or `~ace`.
    pub fn parse(text: &str) -> Result<Self, LogicError> {
        let text = text.trim();
        match text.strip_prefix('~') {
            Some(rest) => Ok(Literal::neg(Atom::new(rest.trim())?)),
            None => Ok(Literal::pos(Atom::new(text)?)),
        }
    }

    pub fn negated(&self) -> Self {
        Literal { atom: self.atom.clone(), positive: !self.positive }
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.positive {
            f.write_str("~")?;
        }
        write!(f, "{}", self.atom)
    }
}

/// A consistent set of literals.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct State(BTreeSet<Literal>);

impl State {
    pub fn empty() -> Self {
        State(BTreeSet::new())
    }

    pub fn new<I: IntoIterator<Item = Literal>>(literals: I) -> Result<Self, LogicError> {
        let set: BTreeSet<Literal> = literals.into_iter().collect();
        if let Some(clash) = set.iter().find(|l| l.positive && set.contains(&l.negated())) {
            return Err(LogicError::Inconsistent(clash.atom.clone()));
        }
        Ok(State(set))
    }

    /// Builds a state from literal strings; convenient in tests and fixtures.
    pub fn parse_literals<'a, I: IntoIterator<Item = &'a str>>(texts: I) -> Result<Self, LogicError> {
        let lits = texts.into_iter().map(Literal::parse).collect::<Result<Vec<_>, _>>()?;
        State::new(lits)
    }

    pub fn literals(&self) -> &BTreeSet<Literal> {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = &Literal> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, lit: &Literal) -> bool {
        self.0.contains(lit)
    }

    /// Whether the state mentions `atom` with either polarity.
    pub fn decides(&self, atom: &Atom) -> bool {
        self.0.iter().any(|l| &l.atom == atom)
    }

    pub fn atoms(&self) -> impl Iterator<Item = &Atom> {
        self.0.iter().map(|l| &l.atom)
    }

    pub fn is_superset(&self, other: &State) -> bool {
        self.0.is_superset(&other.0)
    }

    pub fn overlap(&self, other: &State) -> usize {
        self.0.intersection(&other.0).count()
    }

    /// Union of two states, or `None` if the result would be inconsistent.
    pub fn merge(&self, other: &State) -> Option<State> {
        if other.0.iter().any(|l| self.0.contains(&l.negated())) {
            return None;
        }
        Some(State(self.0.union(&other.0).cloned().collect()))
    }

    pub fn with(&self, lit: Literal) -> Option<State> {
        if self.0.contains(&lit.negated()) {
            return None;
        }
        let mut set = self.0.clone();
        set.insert(lit);
        Some(State(set))
    }

    /// Renders as a DSL conjunction (`ace & ~queen`).
    pub fn conj_text(&self) -> String {
        self.0.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(" & ")
    }
}

impl fmt::Display for State {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{l}")?;
        }
        write!(f, "}}")
    }
}

/// A non-empty set of alternative states.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Question(BTreeSet<State>);

impl Question {
    pub fn new<I: IntoIterator<Item = State>>(alternatives: I) -> Result<Self, LogicError> {
        let set: BTreeSet<State> = alternatives.into_iter().collect();
        if set.is_empty() {
            return Err(LogicError::EmptyQuestion);
        }
        Ok(Question(set))
    }

    pub fn single(state: State) -> Self {
        Question(BTreeSet::from([state]))
    }

    pub fn alternatives(&self) -> &BTreeSet<State> {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = &State> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn atoms(&self) -> BTreeSet<Atom> {
        self.0.iter().flat_map(|s| s.atoms().cloned()).collect()
    }
}

impl fmt::Display for Question {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{s}")?;
        }
        write!(f, "}}")
    }
}
