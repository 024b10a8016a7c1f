use std::collections::BTreeSet;

use super::OracleError;
use crate::engine::{premise_atoms, PremiseInterp};
use crate::logic::{Atom, Literal, State};

pub const MAX_ATOMS: usize = 20;

struct Table {
    atoms: Vec<Atom>,
}

impl Table {
    fn new(premises: &[PremiseInterp], extra: &State) -> Result<Self, OracleError> {
        let mut atoms = premise_atoms(premises);
        atoms.extend(extra.atoms().cloned());
        if atoms.len() > MAX_ATOMS {
            return Err(OracleError::AtomCap { found: atoms.len(), cap: MAX_ATOMS });
        }
        Ok(Table { atoms: atoms.into_iter().collect() })
    }

    fn value(&self, row: u32, lit: &Literal) -> bool {
        let idx = self.atoms.binary_search(&lit.atom).expect("atom collected up front");
        (row >> idx & 1 == 1) == lit.positive
    }

    fn state(&self, row: u32, s: &State) -> bool {
        s.iter().all(|l| self.value(row, l))
    }

    fn premise(&self, row: u32, p: &PremiseInterp) -> bool {
        match p {
            PremiseInterp::AsAnswer(s) => self.state(row, s),
            PremiseInterp::AsQuestion(q) => q.iter().any(|s| self.state(row, s)),
        }
    }

    fn models<'a>(&'a self, premises: &'a [PremiseInterp]) -> impl Iterator<Item = u32> + 'a {
        (0..1u32 << self.atoms.len()).filter(move |row| premises.iter().all(|p| self.premise(*row, p)))
    }
}

/// Truth-table entailment. Questions read as disjunctions of their
/// alternatives, answers as conjunctions.
pub fn entails(premises: &[PremiseInterp], conclusion: &State) -> Result<bool, OracleError> {
    let table = Table::new(premises, conclusion)?;
    let ok = table.models(premises).all(|row| table.state(row, conclusion));
    Ok(ok)
}

pub fn satisfiable(premises: &[PremiseInterp]) -> Result<bool, OracleError> {
    let table = Table::new(premises, &State::empty())?;
    let found = table.models(premises).next().is_some();
    Ok(found)
}

/// Every literal over the premise atoms that holds in all models.
pub fn entailed_literals(premises: &[PremiseInterp]) -> Result<BTreeSet<Literal>, OracleError> {
    let table = Table::new(premises, &State::empty())?;
    let mut candidates: BTreeSet<Literal> =
        table.atoms.iter().flat_map(|a| [Literal::pos(a.clone()), Literal::neg(a.clone())]).collect();
    for row in table.models(premises) {
        candidates.retain(|l| table.value(row, l));
        if candidates.is_empty() {
            break;
        }
    }
    Ok(candidates)
}
