//! Engine predictions and classical reference answers for a problem.

use thiserror::Error;

use super::problem::{Body, Prediction, Problem};
use crate::engine::{asserted_literals, interpret_premise, run, what_follows, Conclusion, EngineError, PremiseInterp};
use crate::grounding::{existential_readback, ground, GroundingError, QuantPremise};
use crate::judgment::{choose, rank_hypotheses, wason_predicted, Choice, ChoiceMode};
use crate::logic::{Question, State};
use crate::oracles::{
    choice_consistency, coherence_violations, entailed_literals, entails, monadic_entails, wason_correct, MenuChoice,
    OracleError, RankingJudgment,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalysisError {
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Grounding(#[from] GroundingError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error("prediction kind does not match problem kind")]
    KindMismatch,
}

pub fn interpretations(premises: &[crate::engine::Premise]) -> Result<Vec<PremiseInterp>, EngineError> {
    premises.iter().map(interpret_premise).collect()
}

/// Final question of the default run over inference premises.
pub fn final_question(interps: &[PremiseInterp]) -> Result<Option<Question>, EngineError> {
    Ok(run(interps)?.map(|r| r.question))
}

fn quantified_run(premises: &[QuantPremise]) -> Result<Vec<QuantPremise>, AnalysisError> {
    let g = ground(premises)?;
    let order = g.absorption_order();
    Ok(match run(&order)? {
        Some(r) => existential_readback(&r.question, &g.registry),
        None => Vec::new(),
    })
}

fn menu_choices(p: &Problem, pick: impl Fn(&super::problem::Menu) -> Choice) -> Vec<(String, Choice)> {
    match &p.body {
        Body::Decision { menus, .. } => menus.iter().map(|m| (m.name.clone(), pick(m))).collect(),
        _ => Vec::new(),
    }
}

/// What the default reasoning procedure answers.
pub fn predict(p: &Problem) -> Result<Prediction, AnalysisError> {
    Ok(match &p.body {
        Body::Inference { premises } => {
            let interps = interpretations(premises)?;
            let c = match final_question(&interps)? {
                Some(q) => what_follows(&q, &asserted_literals(&interps)),
                None => Conclusion::NothingFollows,
            };
            Prediction::Inference(c)
        }
        Body::Quantified { premises } => Prediction::Quantified(quantified_run(premises)?),
        Body::Selection { cards, rule } => Prediction::Selection(wason_predicted(cards, rule)),
        Body::Probability { evidence, hypotheses, congruence } => {
            let r = rank_hypotheses(evidence, hypotheses, congruence);
            Prediction::Ranking(r.hypotheses.iter().map(|h| h.name.clone()).zip(r.rank).collect())
        }
        Body::Decision { modes, .. } => Prediction::Decision(menu_choices(p, |m| {
            let mode = modes.get(&m.name).copied().unwrap_or_default();
            choose(&p.decision_question(m).expect("decision body"), mode)
        })),
    })
}

/// A classically correct answer of the same shape as [`predict`]'s.
///
/// Rankings order hypotheses by how few conjuncts they have, which never
/// places a conjunction above its conjunct. Decisions use the default choice
/// rule on every menu.
pub fn correct_answer(p: &Problem) -> Result<Prediction, AnalysisError> {
    Ok(match &p.body {
        Body::Inference { premises } => {
            let interps = interpretations(premises)?;
            let asserted = asserted_literals(&interps);
            let lits: Vec<_> = entailed_literals(&interps)?.into_iter().filter(|l| !asserted.contains(l)).collect();
            if lits.is_empty() {
                Prediction::Inference(Conclusion::NothingFollows)
            } else {
                Prediction::Inference(Conclusion::Follows(State::new(lits).expect("entailed literals are consistent")))
            }
        }
        Body::Quantified { premises } => {
            let mut valid = Vec::new();
            for r in quantified_run(premises)? {
                if monadic_entails(premises, &r)? {
                    valid.push(r);
                }
            }
            Prediction::Quantified(valid)
        }
        Body::Selection { cards, rule } => Prediction::Selection(wason_correct(cards, rule)),
        Body::Probability { hypotheses, .. } => {
            let widest = hypotheses.iter().map(|h| h.state.len()).max().unwrap_or(0);
            Prediction::Ranking(hypotheses.iter().map(|h| (h.name.clone(), (widest - h.state.len()) as u32)).collect())
        }
        Body::Decision { .. } => Prediction::Decision(menu_choices(p, |m| {
            choose(&p.decision_question(m).expect("decision body"), ChoiceMode::default())
        })),
    })
}

pub fn ranking_judgment(p: &Problem, ranking: &[(String, u32)]) -> Option<RankingJudgment> {
    let Body::Probability { hypotheses, .. } = &p.body else { return None };
    let ranks = hypotheses
        .iter()
        .map(|h| ranking.iter().find(|(n, _)| *n == h.name).map(|(_, r)| *r))
        .collect::<Option<Vec<u32>>>()?;
    RankingJudgment::new(hypotheses.clone(), ranks).ok()
}

pub fn menu_choice_records(p: &Problem, choices: &[(String, Choice)]) -> Option<Vec<MenuChoice>> {
    let Body::Decision { menus, .. } = &p.body else { return None };
    choices
        .iter()
        .map(|(name, c)| {
            let m = menus.iter().find(|m| &m.name == name)?;
            MenuChoice::new(m.options.iter().map(|o| o.name.clone()), c.names()).ok()
        })
        .collect()
}

/// Whether classical standards sanction the given answer.
pub fn sanctioned(p: &Problem, answer: &Prediction) -> Result<bool, AnalysisError> {
    Ok(match (&p.body, answer) {
        (Body::Inference { premises }, Prediction::Inference(c)) => match c {
            Conclusion::NothingFollows => true,
            Conclusion::Follows(s) => entails(&interpretations(premises)?, s)?,
        },
        (Body::Quantified { premises }, Prediction::Quantified(rs)) => {
            let mut ok = true;
            for r in rs {
                ok &= monadic_entails(premises, r)?;
            }
            ok
        }
        (Body::Selection { cards, rule }, Prediction::Selection(cs)) => *cs == wason_correct(cards, rule),
        (Body::Probability { .. }, Prediction::Ranking(rs)) => {
            ranking_judgment(p, rs).is_some_and(|r| coherence_violations(&r).is_empty())
        }
        (Body::Decision { .. }, Prediction::Decision(cs)) => {
            menu_choice_records(p, cs).is_some_and(|mc| choice_consistency(&mc).is_empty())
        }
        _ => return Err(AnalysisError::KindMismatch),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::dsl::parse_problem;

    #[test]
    fn illusory_prediction_is_unsanctioned() {
        let p = parse_problem("problem i\nkind: inference\npremise: (ace & queen) | (king & jack)\npremise: ace\n")
            .unwrap();
        let pred = predict(&p).unwrap();
        assert_eq!(pred.to_string(), "queen");
        assert!(!sanctioned(&p, &pred).unwrap());
        assert_eq!(correct_answer(&p).unwrap().to_string(), "nothing");
    }

    #[test]
    fn modus_ponens_is_sanctioned() {
        let p = parse_problem("problem m\nkind: inference\npremise: if ace then king\npremise: ace\n").unwrap();
        let pred = predict(&p).unwrap();
        assert_eq!(pred.to_string(), "king");
        assert!(sanctioned(&p, &pred).unwrap());
        assert_eq!(correct_answer(&p).unwrap(), pred);
    }

    #[test]
    fn coherent_reference_ranking() {
        let p = parse_problem(
            "problem l\nkind: probability\nevidence: sj\nhyp t: teller\nhyp tf: teller & feminist\ncongruent: sj -> feminist\n",
        )
        .unwrap();
        let reference = correct_answer(&p).unwrap();
        assert!(sanctioned(&p, &reference).unwrap());
        assert!(!sanctioned(&p, &predict(&p).unwrap()).unwrap());
    }
}
