#![allow(dead_code)]

use erotetic::engine::{interpret_premise, Premise};
use erotetic::{Atom, Literal, PremiseInterp, Question, State};
use proptest::prelude::*;

pub const POOL: [&str; 6] = ["a", "b", "c", "d", "e", "f"];

pub fn lit(atom: &str, positive: bool) -> Literal {
    let a = Atom::new(atom).unwrap();
    if positive {
        Literal::pos(a)
    } else {
        Literal::neg(a)
    }
}

/// 1..=max literals over distinct atoms of the first `atoms` pool names.
pub fn conj(atoms: usize, max: usize) -> impl Strategy<Value = Vec<Literal>> {
    proptest::sample::subsequence(POOL[..atoms].to_vec(), 1..=max.min(atoms))
        .prop_flat_map(|names| {
            let n = names.len();
            (Just(names), proptest::collection::vec(any::<bool>(), n))
        })
        .prop_map(|(names, signs)| names.iter().zip(signs).map(|(a, s)| lit(a, s)).collect())
}

pub fn premise(atoms: usize) -> impl Strategy<Value = Premise> {
    prop_oneof![
        proptest::collection::vec(conj(atoms, 2), 2..=3).prop_map(Premise::Disjunction),
        (conj(atoms, 1), conj(atoms, 2))
            .prop_map(|(antecedent, consequent)| Premise::Conditional { antecedent, consequent }),
        conj(atoms, 2).prop_map(Premise::Categorical),
    ]
}

pub fn premises(atoms: usize, max: usize) -> impl Strategy<Value = Vec<Premise>> {
    proptest::collection::vec(premise(atoms), 1..=max)
}

pub fn interps(ps: &[Premise]) -> Vec<PremiseInterp> {
    ps.iter().map(|p| interpret_premise(p).unwrap()).collect()
}

pub fn state(atoms: usize) -> impl Strategy<Value = State> {
    conj(atoms, 3).prop_map(|ls| State::new(ls).unwrap())
}

pub fn question(atoms: usize) -> impl Strategy<Value = Question> {
    proptest::collection::vec(state(atoms), 1..=4).prop_map(|ss| Question::new(ss).unwrap())
}
