//! Seeded generation of fallacy-prone problems with oracle-checked labels.

use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::corpus::{
    correct_answer, parse_problem, predict, sanctioned, serialize_problem, AnalysisError, Ask, Body, Menu, ParseError,
    Problem,
};
use crate::engine::Premise;
use crate::judgment::{ChoiceMode, DecisionOption};
use crate::logic::{Atom, Literal, State};
use crate::oracles::Hypothesis;

pub const DEFAULT_VOCABULARY: [&str; 13] =
    ["ace", "king", "queen", "jack", "ten", "nine", "eight", "seven", "six", "five", "four", "three", "two"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Illusory,
    ModusPonens,
    ConjunctionRanking,
    DecisionFraming,
}

impl Family {
    pub fn as_str(&self) -> &'static str {
        match self {
            Family::Illusory => "illusory",
            Family::ModusPonens => "modus-ponens",
            Family::ConjunctionRanking => "conjunction-ranking",
            Family::DecisionFraming => "decision-framing",
        }
    }

    pub fn parse(text: &str) -> Option<Family> {
        [Family::Illusory, Family::ModusPonens, Family::ConjunctionRanking, Family::DecisionFraming]
            .into_iter()
            .find(|f| f.as_str() == text)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Order {
    QuestionFirst,
    AnswerFirst,
    Both,
}

impl Order {
    pub fn parse(text: &str) -> Option<Order> {
        match text {
            "question-first" => Some(Order::QuestionFirst),
            "answer-first" => Some(Order::AnswerFirst),
            "both" => Some(Order::Both),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenConfig {
    pub seed: u64,
    pub family: Family,
    /// Number of instance groups; `Order::Both` emits two instances per group.
    pub count: usize,
    pub atoms_per_conjunct: usize,
    pub disjuncts: usize,
    pub vocabulary: Vec<String>,
    pub order: Order,
}

impl Default for GenConfig {
    fn default() -> Self {
        GenConfig {
            seed: 0,
            family: Family::Illusory,
            count: 1,
            atoms_per_conjunct: 2,
            disjuncts: 2,
            vocabulary: DEFAULT_VOCABULARY.iter().map(|s| s.to_string()).collect(),
            order: Order::QuestionFirst,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("vocabulary has {available} distinct tokens, {needed} needed")]
    VocabularyExhausted { needed: usize, available: usize },
    #[error(transparent)]
    Analysis(#[from] AnalysisError),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("bad record on line {line}: {message}")]
    Record { line: usize, message: String },
}

/// Label attached to every generated problem.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PredictionRecord {
    pub problem_id: String,
    pub kind: String,
    pub prediction: String,
    pub sanctioned: bool,
    pub fallacy: bool,
    /// A classically correct answer, for reference.
    pub correct: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratedInstance {
    pub problem: Problem,
    pub prediction: PredictionRecord,
    /// Shared by the order variants of one draw.
    pub group: String,
}

#[derive(Serialize, Deserialize)]
struct Line {
    group: String,
    problem: String,
    #[serde(flatten)]
    prediction: PredictionRecord,
}

impl GeneratedInstance {
    pub fn to_json(&self) -> String {
        let line = Line {
            group: self.group.clone(),
            problem: serialize_problem(&self.problem),
            prediction: self.prediction.clone(),
        };
        serde_json::to_string(&line).expect("record serializes")
    }
}

pub fn to_jsonl(instances: &[GeneratedInstance]) -> String {
    instances.iter().map(|i| i.to_json() + "\n").collect()
}

pub fn from_jsonl(text: &str) -> Result<Vec<GeneratedInstance>, GenError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        if raw.trim().is_empty() {
            continue;
        }
        let line: Line =
            serde_json::from_str(raw).map_err(|e| GenError::Record { line: i + 1, message: e.to_string() })?;
        let problem = parse_problem(&line.problem)?;
        out.push(GeneratedInstance { problem, prediction: line.prediction, group: line.group });
    }
    Ok(out)
}

/// Runs the engine and the oracles on a problem.
pub fn label(p: &Problem) -> Result<PredictionRecord, GenError> {
    let prediction = predict(p)?;
    let ok = sanctioned(p, &prediction)?;
    Ok(PredictionRecord {
        problem_id: p.id.clone(),
        kind: p.kind().to_string(),
        prediction: prediction.to_string(),
        sanctioned: ok,
        fallacy: !ok,
        correct: correct_answer(p)?.to_string(),
    })
}

fn validate(cfg: &GenConfig) -> Result<Vec<String>, GenError> {
    if cfg.count == 0 {
        return Err(GenError::Config("count must be at least 1".into()));
    }
    if !(1..=3).contains(&cfg.atoms_per_conjunct) {
        return Err(GenError::Config("atoms per conjunct must be 1..=3".into()));
    }
    if !(2..=4).contains(&cfg.disjuncts) {
        return Err(GenError::Config("disjuncts must be 2..=4".into()));
    }
    let mut vocab: Vec<String> = Vec::new();
    for w in &cfg.vocabulary {
        if w.is_empty() || !w.chars().all(|c| c.is_alphanumeric() || c == '_') {
            return Err(GenError::Config(format!("vocabulary token `{w}` is not a plain identifier")));
        }
        if !vocab.contains(w) {
            vocab.push(w.clone());
        }
    }
    let needed = match cfg.family {
        Family::Illusory => cfg.disjuncts * cfg.atoms_per_conjunct,
        Family::ModusPonens => 1 + cfg.atoms_per_conjunct,
        Family::ConjunctionRanking => 1 + 2 * cfg.atoms_per_conjunct + (cfg.disjuncts - 2),
        Family::DecisionFraming => cfg.atoms_per_conjunct,
    };
    if needed > vocab.len() {
        return Err(GenError::VocabularyExhausted { needed, available: vocab.len() });
    }
    Ok(vocab)
}

fn lits(atoms: &[String]) -> Vec<Literal> {
    atoms.iter().map(|a| Literal::pos(Atom::new(a.clone()).expect("validated token"))).collect()
}

fn state(atoms: &[String]) -> State {
    State::new(lits(atoms)).expect("positive literals are consistent")
}

struct Draw {
    question_first: Problem,
    answer_first: Problem,
}

fn draw_illusory(cfg: &GenConfig, atoms: &[String], rng: &mut ChaCha8Rng) -> Draw {
    let width = cfg.atoms_per_conjunct;
    let disjuncts: Vec<Vec<Literal>> = atoms.chunks(width).take(cfg.disjuncts).map(lits).collect();
    let pick = rng.gen_range(0..disjuncts.len());
    let chosen = &disjuncts[pick];
    let size = if width == 1 { 1 } else { rng.gen_range(1..width) };
    let mut idx: Vec<usize> = (0..width).collect();
    idx.shuffle(rng);
    let mut categorical: Vec<Literal> = idx[..size].iter().map(|i| chosen[*i].clone()).collect();
    categorical.sort();
    let rest: Vec<Literal> = chosen.iter().filter(|l| !categorical.contains(l)).cloned().collect();
    let disj = Premise::Disjunction(disjuncts.clone());
    let cat = Premise::Categorical(categorical);
    let mut qf = Problem::new("", Body::Inference { premises: vec![disj.clone(), cat.clone()] });
    let mut af = Problem::new("", Body::Inference { premises: vec![cat, disj] });
    // the reversed member asks about the conclusion the forward one invites
    let target = if rest.is_empty() { None } else { State::new(rest).ok() };
    qf.ask = Ask::Production;
    af.ask = match target {
        Some(t) => Ask::Query(Some(t)),
        None => Ask::Production,
    };
    Draw { question_first: qf, answer_first: af }
}

fn draw_modus_ponens(cfg: &GenConfig, atoms: &[String]) -> Draw {
    let antecedent = lits(&atoms[..1]);
    let consequent = lits(&atoms[1..1 + cfg.atoms_per_conjunct]);
    let cond = Premise::Conditional { antecedent: antecedent.clone(), consequent };
    let cat = Premise::Categorical(antecedent);
    Draw {
        question_first: Problem::new("", Body::Inference { premises: vec![cond.clone(), cat.clone()] }),
        answer_first: Problem::new("", Body::Inference { premises: vec![cat, cond] }),
    }
}

fn draw_ranking(cfg: &GenConfig, atoms: &[String]) -> Draw {
    let w = cfg.atoms_per_conjunct;
    let base = &atoms[0];
    let extra = &atoms[1..1 + w];
    let evidence = &atoms[1 + w..1 + 2 * w];
    let distractors = &atoms[1 + 2 * w..1 + 2 * w + cfg.disjuncts - 2];
    let mut conj_atoms = vec![base.clone()];
    conj_atoms.extend(extra.iter().cloned());
    let mut hyps = vec![
        Hypothesis { name: format!("h_{base}"), state: state(std::slice::from_ref(base)) },
        Hypothesis { name: format!("h_{}", conj_atoms.join("_")), state: state(&conj_atoms) },
    ];
    hyps.extend(
        distractors.iter().map(|d| Hypothesis { name: format!("h_{d}"), state: state(std::slice::from_ref(d)) }),
    );
    let congruence: Vec<(Literal, Literal)> = lits(evidence).into_iter().zip(lits(extra)).collect();
    let body = |hs: Vec<Hypothesis>| Body::Probability {
        evidence: state(evidence),
        hypotheses: hs,
        congruence: congruence.clone(),
    };
    let reversed: Vec<Hypothesis> = hyps.iter().rev().cloned().collect();
    Draw { question_first: Problem::new("", body(hyps)), answer_first: Problem::new("", body(reversed)) }
}

fn draw_decision(cfg: &GenConfig, atoms: &[String]) -> Draw {
    let fun = state(&atoms[..cfg.atoms_per_conjunct]);
    let buy = DecisionOption { name: "buy".into(), features: fun.clone() };
    let skip = DecisionOption { name: "skip".into(), features: State::empty() };
    let body = |opts: Vec<DecisionOption>| Body::Decision {
        menus: vec![
            Menu { name: "plain".into(), options: opts.clone() },
            Menu { name: "reminded".into(), options: opts },
        ],
        priorities: fun.clone(),
        expansions: [("skip".to_string(), fun.clone())].into(),
        modes: [("reminded".to_string(), ChoiceMode::expanded())].into(),
    };
    Draw {
        question_first: Problem::new("", body(vec![buy.clone(), skip.clone()])),
        answer_first: Problem::new("", body(vec![skip, buy])),
    }
}

fn finish(mut p: Problem, id: String, group: &str) -> Result<GeneratedInstance, GenError> {
    p.id = id;
    p.expected = Some(predict(&p)?);
    let prediction = label(&p)?;
    Ok(GeneratedInstance { problem: p, prediction, group: group.to_string() })
}

/// Generates `cfg.count` draws. Each draw uses its own stream of the seeded
/// generator, so instance `i` does not depend on how many precede it.
pub fn generate(cfg: &GenConfig) -> Result<Vec<GeneratedInstance>, GenError> {
    let vocab = validate(cfg)?;
    let mut out = Vec::new();
    for i in 0..cfg.count {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        rng.set_stream(i as u64);
        let mut atoms = vocab.clone();
        atoms.shuffle(&mut rng);
        let draw = match cfg.family {
            Family::Illusory => draw_illusory(cfg, &atoms, &mut rng),
            Family::ModusPonens => draw_modus_ponens(cfg, &atoms),
            Family::ConjunctionRanking => draw_ranking(cfg, &atoms),
            Family::DecisionFraming => draw_decision(cfg, &atoms),
        };
        let group = format!("{}-{}-{i:05}", cfg.family, cfg.seed);
        match cfg.order {
            Order::QuestionFirst => out.push(finish(draw.question_first, group.clone(), &group)?),
            Order::AnswerFirst => out.push(finish(draw.answer_first, group.clone(), &group)?),
            Order::Both => {
                out.push(finish(draw.question_first, format!("{group}-qf"), &group)?);
                out.push(finish(draw.answer_first, format!("{group}-af"), &group)?);
            }
        }
    }
    Ok(out)
}
