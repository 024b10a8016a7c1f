//! Expected answers per problem and frame, and the texts scripted responders
//! print.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::corpus::analysis::{final_question, interpretations};
use crate::corpus::render::{conj_phrase, hypothesis_phrase, option_phrase, quant_phrase, ranking_query_pair};
use crate::corpus::{correct_answer, predict, sanctioned, AnalysisError, Ask, Body, Prediction, Problem};
use crate::engine::{follows_query, Conclusion};
use crate::grounding::QuantPremise;
use crate::judgment::Choice;
use crate::logic::{Literal, State};
use crate::oracles::{entails, monadic_entails, wason_correct, OracleError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KeyError {
    #[error("problem `{0}`: {1}")]
    Analysis(String, AnalysisError),
    #[error("problem `{0}`: {1}")]
    Oracle(String, OracleError),
    #[error("duplicate problem id `{0}`")]
    Duplicate(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrameKey {
    pub frame: Option<String>,
    /// Answers restricted to this frame (one menu for decisions).
    pub etr: Prediction,
    pub correct: Prediction,
    /// Whether the default procedure says yes to the frame's query.
    pub etr_verdict: Option<bool>,
    /// The classically right reply to the frame's query, when determined.
    pub correct_verdict: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProblemKey {
    pub problem: Problem,
    pub fallacious: bool,
    pub frames: Vec<FrameKey>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ScoreKey {
    pub problems: BTreeMap<String, ProblemKey>,
}

fn restrict(pred: &Prediction, frame: Option<&str>) -> Prediction {
    match (pred, frame) {
        (Prediction::Decision(cs), Some(f)) => {
            Prediction::Decision(cs.iter().filter(|(m, _)| m == f).cloned().collect())
        }
        _ => pred.clone(),
    }
}

fn query_target(p: &Problem) -> Option<State> {
    match (&p.ask, &p.expected) {
        (Ask::Query(Some(t)), _) => Some(t.clone()),
        (_, Some(Prediction::Inference(Conclusion::Follows(s)))) => Some(s.clone()),
        _ => None,
    }
}

fn verdicts(
    p: &Problem,
    frame: Option<&str>,
    etr: &Prediction,
    correct: &Prediction,
) -> Result<(Option<bool>, Option<bool>), KeyError> {
    let oracle = |e: OracleError| KeyError::Oracle(p.id.clone(), e);
    let analysis = |e: AnalysisError| KeyError::Analysis(p.id.clone(), e);
    Ok(match (&p.body, &p.expected) {
        (Body::Inference { premises }, _) => {
            let Some(target) = query_target(p) else { return Ok((None, None)) };
            let interps = interpretations(premises).map_err(|e| analysis(e.into()))?;
            let q = final_question(&interps).map_err(|e| analysis(e.into()))?;
            let etr = q.is_some_and(|q| follows_query(&q, &target));
            (Some(etr), Some(entails(&interps, &target).map_err(oracle)?))
        }
        (Body::Quantified { premises }, Some(Prediction::Quantified(target))) if !target.is_empty() => {
            let Prediction::Quantified(readback) = etr else { return Ok((None, None)) };
            let etr = target.iter().all(|t| readback.contains(t));
            let mut valid = true;
            for t in target {
                valid &= monadic_entails(premises, t).map_err(oracle)?;
            }
            (Some(etr), Some(valid))
        }
        (Body::Selection { cards, rule }, Some(Prediction::Selection(target))) => {
            let same = |a: &[String], b: &[String]| {
                let mut a = a.to_vec();
                let mut b = b.to_vec();
                a.sort();
                b.sort();
                a == b
            };
            let Prediction::Selection(pred) = etr else { return Ok((None, None)) };
            (Some(same(target, pred)), Some(same(target, &wason_correct(cards, rule))))
        }
        (Body::Probability { .. }, Some(Prediction::Ranking(target))) => {
            let Some((hi, lo)) = ranking_query_pair(p, target) else { return Ok((None, None)) };
            let Prediction::Ranking(pred) = etr else { return Ok((None, None)) };
            let rank = |n: &str| pred.iter().find(|(m, _)| m == n).map(|(_, r)| *r);
            let etr = rank(&hi.name) > rank(&lo.name);
            let correct = if hi.state != lo.state && hi.state.is_superset(&lo.state) { Some(false) } else { None };
            (Some(etr), correct)
        }
        (Body::Decision { .. }, Some(Prediction::Decision(target))) => {
            let find = |pred: &Prediction| match pred {
                Prediction::Decision(cs) => cs.iter().find(|(m, _)| Some(m.as_str()) == frame).map(|(_, c)| c.clone()),
                _ => None,
            };
            let Some(t) = target.iter().find(|(m, _)| Some(m.as_str()) == frame).map(|(_, c)| c.clone()) else {
                return Ok((None, None));
            };
            (Some(find(etr) == Some(t.clone())), Some(find(correct) == Some(t)))
        }
        _ => (None, None),
    })
}

pub fn problem_key(p: &Problem) -> Result<ProblemKey, KeyError> {
    let analysis = |e: AnalysisError| KeyError::Analysis(p.id.clone(), e);
    let etr = predict(p).map_err(analysis)?;
    let correct = correct_answer(p).map_err(analysis)?;
    let fallacious = !sanctioned(p, &etr).map_err(analysis)?;
    let mut frames = Vec::new();
    for f in p.frames() {
        let fe = restrict(&etr, f.as_deref());
        let fc = restrict(&correct, f.as_deref());
        let (etr_verdict, correct_verdict) = verdicts(p, f.as_deref(), &etr, &correct)?;
        frames.push(FrameKey { frame: f, etr: fe, correct: fc, etr_verdict, correct_verdict });
    }
    Ok(ProblemKey { problem: p.clone(), fallacious, frames })
}

pub fn build_key(problems: &[Problem]) -> Result<ScoreKey, KeyError> {
    let mut key = ScoreKey::default();
    for p in problems {
        if key.problems.insert(p.id.clone(), problem_key(p)?).is_some() {
            return Err(KeyError::Duplicate(p.id.clone()));
        }
    }
    Ok(key)
}

fn quant_list(p: &Problem, rs: &[QuantPremise]) -> String {
    rs.iter().map(|r| quant_phrase(p, r)).collect::<Vec<_>>().join(" and ")
}

/// Plain-text statement of an answer, phrased the way the scorer reads it.
pub fn answer_text(p: &Problem, frame: Option<&str>, answer: &Prediction) -> String {
    match answer {
        Prediction::Inference(Conclusion::NothingFollows) => "Nothing follows.".into(),
        Prediction::Inference(Conclusion::Follows(s)) => {
            format!("It follows that {}.", conj_phrase(p, &s.iter().cloned().collect::<Vec<Literal>>()))
        }
        Prediction::Quantified(rs) if rs.is_empty() => "Nothing follows.".into(),
        Prediction::Quantified(rs) => format!("It follows that {}.", quant_list(p, rs)),
        Prediction::Selection(cs) if cs.is_empty() => "You do not have to turn over any card.".into(),
        Prediction::Selection(cs) => {
            let list: Vec<String> = cs.iter().map(|c| format!("the {c} card")).collect();
            format!("You have to turn over {}.", list.join(" and "))
        }
        Prediction::Ranking(rs) => {
            let Body::Probability { hypotheses, .. } = &p.body else { return String::new() };
            let mut order: Vec<&(String, u32)> = rs.iter().collect();
            order.sort_by_key(|r| std::cmp::Reverse(r.1));
            let items: Vec<String> = order
                .iter()
                .filter_map(|(n, _)| hypotheses.iter().find(|h| &h.name == n))
                .map(|h| format!("{}.", hypothesis_phrase(p, h)))
                .collect();
            format!("From most to least probable: {}", items.join(" "))
        }
        Prediction::Decision(cs) => {
            let parts: Vec<String> = cs
                .iter()
                .filter(|(m, _)| frame.is_none() || frame == Some(m.as_str()))
                .map(|(m, c)| match c {
                    Choice::Option(o) => format!("I would choose {}.", option_phrase(p, Some(m), o)),
                    Choice::Indifferent(os) => {
                        let names: Vec<String> = os.iter().map(|o| option_phrase(p, Some(m), o)).collect();
                        format!("I am indifferent between {}.", names.join(" and "))
                    }
                })
                .collect();
            parts.join(" ")
        }
    }
}

pub fn verdict_text(v: Option<bool>) -> &'static str {
    match v {
        Some(true) => "Yes, it follows.",
        Some(false) => "No, it does not follow.",
        None => "I cannot tell.",
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::builtin;

    fn key_of(id: &str) -> ProblemKey {
        let p = builtin().into_iter().find(|p| p.id == id).unwrap();
        problem_key(&p).unwrap()
    }

    #[test]
    fn illusory_key() {
        let k = key_of("illusory-ace-queen");
        assert!(k.fallacious);
        let f = &k.frames[0];
        assert_eq!((f.etr_verdict, f.correct_verdict), (Some(true), Some(false)));
        assert_eq!(answer_text(&k.problem, None, &f.etr), "It follows that there is a queen.");
        assert_eq!(answer_text(&k.problem, None, &f.correct), "Nothing follows.");
    }

    #[test]
    fn reversed_key_agrees() {
        let k = key_of("illusory-ace-queen-reversed");
        assert!(!k.fallacious);
        assert_eq!((k.frames[0].etr_verdict, k.frames[0].correct_verdict), (Some(false), Some(false)));
    }

    #[test]
    fn decision_frames() {
        let k = key_of("economist-decoy");
        assert_eq!(k.frames.len(), 2);
        assert!(k.fallacious);
        let with = &k.frames[1];
        assert_eq!((with.etr_verdict, with.correct_verdict), (Some(true), Some(false)));
        assert_eq!(answer_text(&k.problem, Some("with_decoy"), &with.etr), "I would choose Print & web subscription.");
    }

    #[test]
    fn every_builtin_problem_is_keyed() {
        let key = build_key(&builtin()).unwrap();
        assert_eq!(key.problems.len(), builtin().len());
        for k in key.problems.values() {
            for f in &k.frames {
                assert!(f.etr_verdict.is_some(), "{}", k.problem.id);
                assert!(f.correct_verdict.is_some(), "{}", k.problem.id);
            }
        }
    }
}
