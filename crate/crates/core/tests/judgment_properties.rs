mod common;

use common::{conj, lit};
use erotetic::judgment::{
    choose, rank_hypotheses, scores, wason_predicted, ChoiceMode, DecisionOption, DecisionQuestion,
};
use erotetic::oracles::{coherence_violations, wason_correct, Card, CardRule, Hypothesis};
use erotetic::State;
use proptest::prelude::*;

proptest! {
    #[test]
    fn conjunction_fallacy_exactly_when_superset_has_more_support(
        evidence in conj(5, 3),
        base in conj(5, 2),
        extra in conj(5, 2),
    ) {
        let small = State::new(base.clone()).unwrap();
        let Some(big) = extra.iter().try_fold(small.clone(), |s, l| s.with(l.clone())) else { return Ok(()) };
        prop_assume!(big != small);
        let evidence = State::new(evidence).unwrap();
        let hyps = vec![
            Hypothesis { name: "small".into(), state: small.clone() },
            Hypothesis { name: "big".into(), state: big.clone() },
        ];
        let r = rank_hypotheses(&evidence, &hyps, &[]);
        let fallacy = !coherence_violations(&r).is_empty();
        prop_assert_eq!(fallacy, evidence.overlap(&big) > evidence.overlap(&small));
    }

    #[test]
    fn default_scores_ignore_other_options(
        feats in proptest::collection::vec(conj(5, 3), 2..=4),
        added in conj(5, 3),
        prio in conj(5, 3),
    ) {
        let opts: Vec<DecisionOption> = feats
            .iter()
            .enumerate()
            .map(|(i, f)| DecisionOption { name: format!("o{i}"), features: State::new(f.clone()).unwrap() })
            .collect();
        let d = DecisionQuestion { options: opts.clone(), priorities: State::new(prio).unwrap(), ..Default::default() };
        let mut wider = d.clone();
        wider.options.push(DecisionOption { name: "new".into(), features: State::new(added).unwrap() });
        let before = scores(&d, ChoiceMode::default());
        let after = scores(&wider, ChoiceMode::default());
        prop_assert_eq!(&after[..before.len()], &before[..]);
    }
}

#[test]
fn prediction_and_correct_selection_differ_on_four_and_five() {
    let cards: Vec<Card> = ["E", "K", "4", "5"].iter().map(|t| Card::new(*t)).collect();
    let rule = CardRule { antecedent: "E".into(), consequent: "4".into() };
    let predicted = wason_predicted(&cards, &rule);
    let correct = wason_correct(&cards, &rule);
    let differ: Vec<&str> = ["E", "K", "4", "5"]
        .into_iter()
        .filter(|t| predicted.iter().any(|p| p == t) != correct.iter().any(|c| c == t))
        .collect();
    assert_eq!(differ, ["4", "5"]);
}

#[test]
fn decoy_bonus_needs_a_dominated_option() {
    let opt = |n: &str, fs: &[(&str, bool)]| DecisionOption {
        name: n.into(),
        features: State::new(fs.iter().map(|(a, s)| lit(a, *s))).unwrap(),
    };
    let d = DecisionQuestion {
        options: vec![opt("x", &[("a", true)]), opt("y", &[("b", true)])],
        priorities: State::new([lit("a", true), lit("b", true)]).unwrap(),
        ..Default::default()
    };
    assert_eq!(choose(&d, ChoiceMode::decoy()), choose(&d, ChoiceMode::default()));
}
