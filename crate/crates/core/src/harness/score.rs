//! Scoring of transcripts against a [`ScoreKey`].
//!
//! Matching works on normalized text: lowercase, punctuation and the articles
//! "a", "an" and "the" removed. A claim counts when its phrase occurs and no
//! negation word appears just before it.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::key::{FrameKey, ProblemKey, ScoreKey};
use super::run::{Status, TranscriptRecord};
use crate::corpus::analysis::{menu_choice_records, ranking_judgment};
use crate::corpus::render::{card_words, conj_phrase, hypothesis_phrase, option_phrase, quant_phrase};
use crate::corpus::{Body, Prediction, Problem};
use crate::engine::Conclusion;
use crate::judgment::Choice;
use crate::oracles::{choice_consistency, coherence_violations};

const NEGATIONS: [&str; 11] =
    ["not", "no", "nothing", "cannot", "cant", "doesnt", "dont", "isnt", "never", "neither", "nor"];
const NEGATION_WINDOW: usize = 4;

const NOTHING_PATTERNS: [&str; 12] = [
    "nothing follows",
    "nothing else follows",
    "nothing further follows",
    "nothing new follows",
    "nothing definite follows",
    "nothing can be concluded",
    "nothing can be inferred",
    "no conclusion",
    "cannot conclude",
    "cannot be concluded",
    "cannot be determined",
    "no valid conclusion",
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScoreRecord {
    pub problem_id: String,
    pub template: String,
    pub correct_produced: bool,
    pub correct_endorsed: bool,
    pub etr_produced: bool,
    pub etr_endorsed: bool,
    pub fallacy_produced: bool,
    pub fallacy_endorsed: bool,
    pub needs_review: bool,
    pub overridden: bool,
    pub notes: Vec<String>,
}

/// Hand verdicts for one transcript cell; `None` keeps the automatic value.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Override {
    pub problem_id: String,
    pub template: String,
    pub condition: String,
    #[serde(default)]
    pub frame: Option<String>,
    #[serde(default)]
    pub correct: Option<bool>,
    #[serde(default)]
    pub etr: Option<bool>,
}

pub fn normalize(text: &str) -> Vec<String> {
    let cleaned: String = text
        .to_lowercase()
        .chars()
        .filter(|c| *c != '\'' && *c != '’')
        .map(|c| if c.is_alphanumeric() { c } else { ' ' })
        .collect();
    cleaned.split_whitespace().filter(|w| !matches!(*w, "a" | "an" | "the")).map(String::from).collect()
}

fn find_from(words: &[String], pat: &[String], from: usize) -> Option<usize> {
    if pat.is_empty() || pat.len() > words.len() {
        return None;
    }
    (from..=words.len() - pat.len()).find(|i| words[*i..*i + pat.len()] == *pat)
}

fn negated_at(words: &[String], pos: usize) -> bool {
    words[pos.saturating_sub(NEGATION_WINDOW)..pos].iter().any(|w| NEGATIONS.contains(&w.as_str()))
}

/// Whether `phrase` occurs somewhere without a preceding negation.
pub fn affirms(words: &[String], phrase: &str) -> bool {
    let pat = normalize(phrase);
    let mut from = 0;
    while let Some(i) = find_from(words, &pat, from) {
        if !negated_at(words, i) {
            return true;
        }
        from = i + 1;
    }
    false
}

pub fn says_nothing_follows(words: &[String]) -> bool {
    NOTHING_PATTERNS.iter().any(|p| find_from(words, &normalize(p), 0).is_some())
}

/// Reads a yes/no reply to a query.
pub fn yes_no(response: &str) -> Option<bool> {
    let words = normalize(response);
    match words.first().map(String::as_str) {
        Some("yes") => return Some(true),
        Some("no") => return Some(false),
        _ => {}
    }
    let has = |p: &str| find_from(&words, &normalize(p), 0).is_some();
    if ["does not follow", "doesnt follow", "not necessarily", "cannot be concluded", "not follow"]
        .iter()
        .any(|p| has(p))
    {
        return Some(false);
    }
    if ["it follows", "does follow", "yes"].iter().any(|p| has(p)) {
        return Some(true);
    }
    None
}

// Finds each candidate phrase, longest first, masking matched spans so a
// shorter phrase cannot match inside a longer one. Returns (position, index).
fn locate(words: &[String], candidates: &[(usize, String)]) -> Vec<(usize, usize)> {
    let mut cands: Vec<(usize, Vec<String>)> =
        candidates.iter().map(|(i, p)| (*i, normalize(p))).filter(|(_, p)| !p.is_empty()).collect();
    cands.sort_by_key(|c| std::cmp::Reverse(c.1.len()));
    let mut masked = vec![false; words.len()];
    let mut found: BTreeMap<usize, usize> = BTreeMap::new();
    for (idx, pat) in cands {
        if found.contains_key(&idx) {
            continue;
        }
        let mut from = 0;
        while let Some(pos) = find_from(words, &pat, from) {
            if masked[pos..pos + pat.len()].iter().any(|m| *m) {
                from = pos + 1;
                continue;
            }
            masked[pos..pos + pat.len()].iter_mut().for_each(|m| *m = true);
            found.insert(idx, pos);
            break;
        }
    }
    let mut out: Vec<(usize, usize)> = found.into_iter().map(|(i, pos)| (pos, i)).collect();
    out.sort();
    out
}

fn selected_cards(p: &Problem, response: &str) -> BTreeSet<String> {
    let Body::Selection { cards, .. } = &p.body else { return BTreeSet::new() };
    let raw: Vec<String> =
        response.split(|c: char| !c.is_alphanumeric()).filter(|w| !w.is_empty()).map(String::from).collect();
    let lower: Vec<String> = raw.iter().map(|w| w.to_lowercase()).collect();
    let mut out = BTreeSet::new();
    for c in cards {
        let hit = card_words(p, &c.visible).iter().any(|w| {
            raw.iter().enumerate().any(|(i, tok)| {
                let matched = if *w == c.visible { tok == w } else { lower[i] == w.to_lowercase() };
                matched && !lower[i.saturating_sub(NEGATION_WINDOW)..i].iter().any(|x| NEGATIONS.contains(&x.as_str()))
            })
        });
        if hit {
            out.insert(c.visible.clone());
        }
    }
    out
}

fn extracted_order(p: &Problem, words: &[String]) -> Option<Vec<String>> {
    let Body::Probability { hypotheses, .. } = &p.body else { return None };
    let mut cands = Vec::new();
    for (i, h) in hypotheses.iter().enumerate() {
        cands.push((i, hypothesis_phrase(p, h)));
        cands.push((i, h.name.replace('_', " ")));
    }
    let found = locate(words, &cands);
    if found.len() < hypotheses.len() {
        return None;
    }
    Some(found.into_iter().map(|(_, i)| hypotheses[i].name.clone()).collect())
}

fn extracted_choice(p: &Problem, frame: Option<&str>, words: &[String]) -> BTreeSet<String> {
    let Body::Decision { menus, .. } = &p.body else { return BTreeSet::new() };
    let Some(menu) = menus.iter().find(|m| Some(m.name.as_str()) == frame) else { return BTreeSet::new() };
    let mut cands = Vec::new();
    for (i, o) in menu.options.iter().enumerate() {
        cands.push((i, option_phrase(p, frame, &o.name)));
        cands.push((i, o.name.replace('_', " ")));
    }
    locate(words, &cands).into_iter().map(|(_, i)| menu.options[i].name.clone()).collect()
}

fn order_as_ranking(order: &[String]) -> Vec<(String, u32)> {
    let n = order.len() as u32;
    order.iter().enumerate().map(|(i, name)| (name.clone(), n - i as u32)).collect()
}

/// Whether the response order respects every strict preference in `ranks`.
fn order_fits(order: &[String], ranks: &[(String, u32)]) -> bool {
    let rank = |n: &str| ranks.iter().find(|(m, _)| m == n).map(|(_, r)| *r);
    order.iter().enumerate().all(|(i, a)| order[i + 1..].iter().all(|b| rank(a) >= rank(b)))
}

fn conclusion_claimed(p: &Problem, words: &[String], c: &Conclusion) -> bool {
    match c {
        Conclusion::NothingFollows => says_nothing_follows(words),
        Conclusion::Follows(s) => s.iter().all(|l| affirms(words, &conj_phrase(p, std::slice::from_ref(l)))),
    }
}

/// How one production response relates to the frame's expected answers.
#[derive(Debug, Clone, Default)]
struct ProductionFrame {
    etr: bool,
    correct: Option<bool>,
    choice: Option<BTreeSet<String>>,
    unreadable: bool,
}

fn score_production(pk: &ProblemKey, fk: &FrameKey, response: &str) -> ProductionFrame {
    let p = &pk.problem;
    let words = normalize(response);
    let mut out = ProductionFrame::default();
    match (&fk.etr, &fk.correct) {
        (Prediction::Inference(e), Prediction::Inference(c)) => {
            out.etr = conclusion_claimed(p, &words, e);
            out.correct = Some(conclusion_claimed(p, &words, c));
        }
        (Prediction::Quantified(e), Prediction::Quantified(c)) => {
            let claimed = |rs: &[crate::grounding::QuantPremise]| {
                if rs.is_empty() {
                    says_nothing_follows(&words)
                } else {
                    rs.iter().all(|r| affirms(&words, &quant_phrase(p, r)))
                }
            };
            out.etr = claimed(e);
            out.correct = Some(claimed(c));
        }
        (Prediction::Selection(e), Prediction::Selection(c)) => {
            let got = selected_cards(p, response);
            out.unreadable = got.is_empty();
            out.etr = got == e.iter().cloned().collect();
            out.correct = Some(got == c.iter().cloned().collect());
        }
        (Prediction::Ranking(e), Prediction::Ranking(_)) => match extracted_order(p, &words) {
            Some(order) => {
                out.etr = order_fits(&order, e);
                out.correct =
                    ranking_judgment(p, &order_as_ranking(&order)).map(|r| coherence_violations(&r).is_empty());
            }
            None => out.unreadable = true,
        },
        (Prediction::Decision(e), Prediction::Decision(_)) => {
            let got = extracted_choice(p, fk.frame.as_deref(), &words);
            let want: BTreeSet<String> = e.first().map(|(_, c)| c.names().into_iter().collect()).unwrap_or_default();
            out.unreadable = got.is_empty();
            out.etr = !got.is_empty() && got == want;
            out.choice = (!got.is_empty()).then_some(got);
            return out;
        }
        _ => out.unreadable = true,
    }
    if !out.etr && out.correct != Some(true) {
        out.unreadable = true;
    }
    out
}

struct CellResult {
    condition: String,
    frame: Option<String>,
    etr: Option<bool>,
    correct: Option<bool>,
    choice: Option<BTreeSet<String>>,
    review: Option<String>,
}

fn cell_result(pk: &ProblemKey, t: &TranscriptRecord) -> CellResult {
    let mut r = CellResult {
        condition: t.condition.clone(),
        frame: t.frame.clone(),
        etr: Some(false),
        correct: Some(false),
        choice: None,
        review: None,
    };
    let label = cell_label(t);
    if t.status != Status::Ok {
        r.review = Some(format!("{label}: responder status {:?}", t.status));
        return r;
    }
    if t.response.trim().is_empty() {
        r.review = Some(format!("{label}: empty response"));
        return r;
    }
    let Some(fk) = pk.frames.iter().find(|f| f.frame == t.frame) else {
        r.review = Some(format!("{label}: unknown frame"));
        return r;
    };
    if t.condition == "query" {
        let reply = yes_no(&t.response);
        r.etr = reply.map(|v| Some(v) == fk.etr_verdict);
        r.correct = match (reply, fk.correct_verdict) {
            (Some(v), Some(c)) => Some(v == c),
            _ => None,
        };
        if reply.is_none() {
            r.review = Some(format!("{label}: no yes/no reply found"));
        } else if fk.correct_verdict.is_none() {
            r.review = Some(format!("{label}: query has no determined classical answer"));
        }
    } else {
        let pf = score_production(pk, fk, &t.response);
        r.etr = Some(pf.etr);
        r.correct = pf.correct;
        r.choice = pf.choice;
        if pf.unreadable {
            r.review = Some(format!("{label}: response matches no expected answer"));
        }
    }
    r
}

fn cell_label(t: &TranscriptRecord) -> String {
    match &t.frame {
        Some(f) => format!("{}/{f} {}", t.condition, t.template),
        None => format!("{} {}", t.condition, t.template),
    }
}

fn decision_consistent(pk: &ProblemKey, cells: &[&CellResult]) -> Option<bool> {
    let mut choices = Vec::new();
    for f in &pk.frames {
        let c = cells.iter().find(|c| c.frame == f.frame)?;
        let names: Vec<String> = c.choice.as_ref()?.iter().cloned().collect();
        let choice = if names.len() == 1 { Choice::Option(names[0].clone()) } else { Choice::Indifferent(names) };
        choices.push((f.frame.clone()?, choice));
    }
    let records = menu_choice_records(&pk.problem, &choices)?;
    Some(choice_consistency(&records).is_empty())
}

fn all_true(cells: &[&CellResult], frames: usize, get: impl Fn(&CellResult) -> Option<bool>) -> bool {
    cells.len() == frames && cells.iter().all(|c| get(c) == Some(true))
}

/// Scores transcripts grouped by (problem, template). Overrides replace the
/// automatic verdicts of the cells they name and are noted in the record.
pub fn score(transcripts: &[TranscriptRecord], key: &ScoreKey, overrides: &[Override]) -> Vec<ScoreRecord> {
    let mut groups: BTreeMap<(String, String), Vec<&TranscriptRecord>> = BTreeMap::new();
    for t in transcripts {
        groups.entry((t.problem_id.clone(), t.template.clone())).or_default().push(t);
    }
    let mut out = Vec::new();
    for ((pid, template), mut ts) in groups {
        ts.sort_by(|a, b| (&a.condition, &a.frame, &a.prompt).cmp(&(&b.condition, &b.frame, &b.prompt)));
        let Some(pk) = key.problems.get(&pid) else {
            out.push(ScoreRecord {
                problem_id: pid.clone(),
                template,
                correct_produced: false,
                correct_endorsed: false,
                etr_produced: false,
                etr_endorsed: false,
                fallacy_produced: false,
                fallacy_endorsed: false,
                needs_review: true,
                overridden: false,
                notes: vec![format!("problem `{pid}` is not in the key")],
            });
            continue;
        };
        let mut notes = Vec::new();
        let mut overridden = false;
        let mut results: Vec<CellResult> = Vec::new();
        for t in ts {
            let mut r = cell_result(pk, t);
            if let Some(o) = overrides.iter().find(|o| {
                o.problem_id == pid && o.template == template && o.condition == t.condition && o.frame == t.frame
            }) {
                if let Some(c) = o.correct {
                    r.correct = Some(c);
                }
                if let Some(e) = o.etr {
                    r.etr = Some(e);
                }
                if let Some(why) = r.review.take() {
                    notes.push(format!("{why} (resolved by override)"));
                }
                notes.push(format!("override applied to {}", cell_label(t)));
                overridden = true;
                r.choice = None;
            }
            results.push(r);
        }
        let frames = pk.frames.len();
        let prod: Vec<&CellResult> = results.iter().filter(|r| r.condition == "production").collect();
        let query: Vec<&CellResult> = results.iter().filter(|r| r.condition == "query").collect();
        let is_decision = matches!(pk.problem.body, Body::Decision { .. });

        let etr_produced = all_true(&prod, frames, |c| c.etr);
        // decision cells carry a choice, not a verdict, unless overridden
        let correct_produced = if is_decision && !prod.iter().all(|c| c.correct.is_some()) {
            decision_consistent(pk, &prod).unwrap_or(false)
        } else {
            all_true(&prod, frames, |c| c.correct)
        };
        let etr_endorsed = all_true(&query, frames, |c| c.etr);
        let correct_endorsed = all_true(&query, frames, |c| c.correct);

        notes.extend(results.iter().filter_map(|r| r.review.clone()));
        if pk.problem.manual_review && !overridden {
            notes.push("marked for manual review".into());
        }
        let needs_review = results.iter().any(|r| r.review.is_some()) || (pk.problem.manual_review && !overridden);
        out.push(ScoreRecord {
            problem_id: pid,
            template,
            correct_produced,
            correct_endorsed,
            etr_produced,
            etr_endorsed,
            fallacy_produced: pk.fallacious && etr_produced,
            fallacy_endorsed: pk.fallacious && etr_endorsed,
            needs_review,
            overridden,
            notes,
        });
    }
    out
}
