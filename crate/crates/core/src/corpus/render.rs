//! Prompt rendering for the production and query conditions, optionally
//! wrapped in the control or procedure template.

use std::fmt;

use thiserror::Error;

use super::problem::{Ask, Body, Menu, Prediction, Problem};
use crate::engine::{Conclusion, Premise};
use crate::grounding::QuantPremise;
use crate::judgment::Choice;
use crate::logic::{Literal, State};
use crate::oracles::{Card, CardRule, Hypothesis};

pub const CONTROL_PREFIX: &str = "Reason step-by-step for the following problem.";
pub const ETR_PREFIX: &str = "Answer the following question according to this procedure: First, list the premises. \
Second, turn each premise into a question to make a new list of questions; treat questions as possible alternatives. \
Third, reason step-by-step using both lists, keeping track of alternatives.";

pub const PRODUCTION_SUFFIX: &str = "What, if anything, follows?";
const DECISION_QUESTION: &str = "Which of the following options would you choose?";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Condition {
    Production,
    Query,
}

impl Condition {
    pub const ALL: [Condition; 2] = [Condition::Production, Condition::Query];

    pub fn as_str(&self) -> &'static str {
        match self {
            Condition::Production => "production",
            Condition::Query => "query",
        }
    }

    pub fn parse(text: &str) -> Option<Condition> {
        match text {
            "production" => Some(Condition::Production),
            "query" => Some(Condition::Query),
            _ => None,
        }
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Template {
    None,
    Control,
    Etr,
}

impl Template {
    pub const ALL: [Template; 3] = [Template::None, Template::Control, Template::Etr];

    pub fn as_str(&self) -> &'static str {
        match self {
            Template::None => "none",
            Template::Control => "control",
            Template::Etr => "etr",
        }
    }

    pub fn parse(text: &str) -> Option<Template> {
        match text {
            "none" => Some(Template::None),
            "control" => Some(Template::Control),
            "etr" => Some(Template::Etr),
            _ => None,
        }
    }

    pub fn prefix(&self) -> Option<&'static str> {
        match self {
            Template::None => None,
            Template::Control => Some(CONTROL_PREFIX),
            Template::Etr => Some(ETR_PREFIX),
        }
    }

    /// Inserts `prompt` into the template's slot.
    pub fn wrap(&self, prompt: &str) -> String {
        match self.prefix() {
            Some(pre) => format!("{pre} {prompt}"),
            None => prompt.to_string(),
        }
    }
}

impl fmt::Display for Template {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RenderError {
    #[error("problem `{0}` has no query target")]
    NoQueryTarget(String),
    #[error("problem `{problem}` has no frame `{frame}`")]
    UnknownFrame { problem: String, frame: String },
}

pub fn article(word: &str) -> &'static str {
    let lower = word.to_lowercase();
    let an_letters = ["a", "e", "f", "h", "i", "l", "m", "n", "o", "r", "s", "x"];
    if word.chars().count() == 1 && word.chars().all(|c| c.is_ascii_alphabetic()) {
        return if an_letters.contains(&lower.as_str()) { "an" } else { "a" };
    }
    if word.chars().all(|c| c.is_ascii_digit()) {
        return if lower.starts_with('8') || lower == "11" || lower == "18" { "an" } else { "a" };
    }
    if lower.starts_with(['a', 'e', 'i', 'o', 'u']) {
        "an"
    } else {
        "a"
    }
}

fn humanize(name: &str) -> String {
    name.replace('_', " ")
}

fn capitalize(s: &str) -> String {
    let mut cs = s.chars();
    match cs.next() {
        Some(c) => c.to_uppercase().chain(cs).collect(),
        None => String::new(),
    }
}

fn sentence(s: &str) -> String {
    let s = capitalize(s.trim());
    if s.ends_with(['.', '?', '!']) {
        s
    } else {
        format!("{s}.")
    }
}

/// Lookup order for a keyed phrase: frame-specific, then plain.
fn phrase<'a>(p: &'a Problem, frame: Option<&str>, key: &str) -> Option<&'a str> {
    frame.and_then(|f| p.phrases.get(&format!("{f}.{key}"))).or_else(|| p.phrases.get(key)).map(String::as_str)
}

/// Clause for a literal, e.g. "there is a queen".
pub fn literal_phrase(p: &Problem, lit: &Literal) -> String {
    let atom = lit.atom.as_str();
    if !lit.positive {
        if let Some(s) = p.phrases.get(&format!("~{atom}")) {
            return s.clone();
        }
    }
    match (p.phrases.get(atom), lit.positive) {
        (Some(s), true) => s.clone(),
        (Some(s), false) => format!("it is not the case that {s}"),
        (None, true) => format!("there is {} {}", article(atom), humanize(atom)),
        (None, false) => format!("there is no {}", humanize(atom)),
    }
}

/// Clause for a conjunction of literals.
pub fn conj_phrase(p: &Problem, lits: &[Literal]) -> String {
    lits.iter().map(|l| literal_phrase(p, l)).collect::<Vec<_>>().join(" and ")
}

fn is_default(p: &Problem, lit: &Literal) -> bool {
    !p.phrases.contains_key(lit.atom.as_str()) && !p.phrases.contains_key(&format!("~{}", lit.atom))
}

// "there is an ace and a queen in the hand" when every literal uses the
// card wording; otherwise the plain clause conjunction.
fn hand_clause(p: &Problem, lits: &[Literal]) -> String {
    if !lits.is_empty() && lits.iter().all(|l| l.positive && is_default(p, l)) {
        let items: Vec<String> =
            lits.iter().map(|l| format!("{} {}", article(l.atom.as_str()), humanize(l.atom.as_str()))).collect();
        return format!("there is {} in the hand", items.join(" and "));
    }
    if !lits.is_empty() && lits.iter().all(|l| !l.positive && is_default(p, l)) {
        let items: Vec<String> = lits.iter().map(|l| humanize(l.atom.as_str())).collect();
        return format!("there is no {} in the hand", items.join(" and no "));
    }
    conj_phrase(p, lits)
}

fn premise_sentence(p: &Problem, premise: &Premise) -> String {
    match premise {
        Premise::Categorical(lits) => sentence(&hand_clause(p, lits)),
        Premise::Disjunction(ds) => {
            let parts: Vec<String> = ds.iter().map(|d| hand_clause(p, d)).collect();
            sentence(&parts.join(", or else "))
        }
        Premise::Conditional { antecedent, consequent } => {
            sentence(&format!("if {}, then {}", hand_clause(p, antecedent), hand_clause(p, consequent)))
        }
    }
}

fn subject_phrase(p: &Problem, pred: &str) -> String {
    p.phrases.get(pred).cloned().unwrap_or_else(|| humanize(pred))
}

fn predicate_phrase(p: &Problem, pred: &str) -> String {
    p.phrases.get(&format!("{pred}.pred")).cloned().unwrap_or_else(|| humanize(pred))
}

/// "some square cards are textured"
pub fn quant_phrase(p: &Problem, q: &QuantPremise) -> String {
    match q {
        QuantPremise::Some(a, b) => format!("some {} are {}", subject_phrase(p, a), predicate_phrase(p, b)),
        QuantPremise::All(a, b) => format!("all {} are {}", subject_phrase(p, a), predicate_phrase(p, b)),
    }
}

/// Words a response may use for a card, e.g. "4" and "four".
pub fn card_words(p: &Problem, token: &str) -> Vec<String> {
    let mut out = vec![token.to_string()];
    if let Some(w) = p.phrases.get(token) {
        out.push(w.clone());
    }
    out
}

fn rule_sentence(p: &Problem, rule: &CardRule) -> String {
    let a = p.phrases.get(&rule.antecedent).cloned().unwrap_or_else(|| rule.antecedent.clone());
    let c = p.phrases.get(&rule.consequent).cloned().unwrap_or_else(|| rule.consequent.clone());
    format!(
        "If a card has {} {a} on one side then it has {} {c} on the other side.",
        article(&rule.antecedent),
        article(&rule.consequent)
    )
}

fn cards_vignette(cards: &[Card]) -> String {
    let shows: Vec<String> =
        cards.iter().map(|c| format!("one card shows {} {}", article(&c.visible), c.visible)).collect();
    let list = match shows.len() {
        0 => String::new(),
        1 => shows[0].clone(),
        n => format!("{}, and {}", shows[..n - 1].join(", "), shows[n - 1]),
    };
    format!(
        "There are several cards on the table, which have a letter on one side and a number on the other side. {}",
        sentence(&list)
    )
}

pub fn hypothesis_phrase(p: &Problem, h: &Hypothesis) -> String {
    p.phrases.get(&h.name).cloned().unwrap_or_else(|| conj_phrase(p, &h.state.iter().cloned().collect::<Vec<_>>()))
}

/// Label a response may use for an option within a frame.
pub fn option_phrase(p: &Problem, frame: Option<&str>, option: &str) -> String {
    phrase(p, frame, option).map(String::from).unwrap_or_else(|| humanize(option))
}

fn option_line(p: &Problem, frame: Option<&str>, option: &str) -> String {
    let label = option_phrase(p, frame, option);
    match phrase(p, frame, &format!("{option}.detail")) {
        Some(d) => format!("{label} - {d}"),
        None => label,
    }
}

fn menu<'a>(p: &'a Problem, frame: Option<&str>) -> Result<Option<&'a Menu>, RenderError> {
    let Body::Decision { menus, .. } = &p.body else {
        return Ok(None);
    };
    let found = match frame {
        Some(f) => menus.iter().find(|m| m.name == f),
        None => menus.first(),
    };
    found
        .map(Some)
        .ok_or_else(|| RenderError::UnknownFrame { problem: p.id.clone(), frame: frame.unwrap_or("").to_string() })
}

fn state_lits(s: &State) -> Vec<Literal> {
    s.iter().cloned().collect()
}

fn choice_phrase(p: &Problem, frame: Option<&str>, c: &Choice) -> String {
    match c {
        Choice::Option(o) => format!("you should choose {}", option_phrase(p, frame, o)),
        Choice::Indifferent(os) => {
            let names: Vec<String> = os.iter().map(|o| option_phrase(p, frame, o)).collect();
            format!("you should be indifferent between {}", names.join(" and "))
        }
    }
}

/// The `(higher, lower)` hypothesis pair a ranking query asks about.
pub fn ranking_query_pair(p: &Problem, ranking: &[(String, u32)]) -> Option<(Hypothesis, Hypothesis)> {
    let Body::Probability { hypotheses, .. } = &p.body else { return None };
    let find = |n: &str| hypotheses.iter().find(|h| h.name == n).cloned();
    let top = ranking.iter().max_by_key(|(_, r)| *r)?;
    if ranking.iter().filter(|(_, r)| *r == top.1).count() > 1 {
        return None;
    }
    let high = find(&top.0)?;
    let lower: Vec<&(String, u32)> = ranking.iter().filter(|(_, r)| *r < top.1).collect();
    let pick = lower
        .iter()
        .find(|(n, _)| find(n).is_some_and(|h| high.state.is_superset(&h.state)))
        .or_else(|| lower.first())?;
    Some((high, find(&pick.0)?))
}

/// The question text substituted for X in "Does it follow that X?".
pub fn query_text(p: &Problem, frame: Option<&str>) -> Result<String, RenderError> {
    let none = || RenderError::NoQueryTarget(p.id.clone());
    if let Ask::Query(Some(target)) = &p.ask {
        if let Body::Inference { .. } = p.body {
            return Ok(conj_phrase(p, &state_lits(target)));
        }
    }
    let expected = p.expected.as_ref().ok_or_else(none)?;
    match expected {
        Prediction::Inference(Conclusion::Follows(s)) => Ok(conj_phrase(p, &state_lits(s))),
        Prediction::Inference(Conclusion::NothingFollows) => Err(none()),
        Prediction::Quantified(rs) if rs.is_empty() => Err(none()),
        Prediction::Quantified(rs) => Ok(rs.iter().map(|r| quant_phrase(p, r)).collect::<Vec<_>>().join(" and ")),
        Prediction::Selection(cs) if cs.is_empty() => Ok("you do not have to turn over any card".into()),
        Prediction::Selection(cs) => {
            let list: Vec<String> = cs.iter().map(|c| format!("the {c} card")).collect();
            Ok(format!("you have to turn over {} and no other card", list.join(" and ")))
        }
        Prediction::Ranking(rs) => {
            let (hi, lo) = ranking_query_pair(p, rs).ok_or_else(none)?;
            Ok(format!(
                "it is more probable that {} than that {}",
                hypothesis_phrase(p, &hi),
                hypothesis_phrase(p, &lo)
            ))
        }
        Prediction::Decision(cs) => {
            let m = menu(p, frame)?.ok_or_else(none)?;
            let (_, c) = cs.iter().find(|(name, _)| *name == m.name).ok_or_else(none)?;
            Ok(choice_phrase(p, Some(&m.name), c))
        }
    }
}

fn vignette(p: &Problem, frame: Option<&str>) -> Result<String, RenderError> {
    if let Body::Decision { .. } = &p.body {
        let m = menu(p, frame)?.expect("decision body");
        let head = p.english.clone().unwrap_or_else(|| DECISION_QUESTION.to_string());
        let lines: Vec<String> = m
            .options
            .iter()
            .enumerate()
            .map(|(i, o)| format!("{}. {}", i + 1, sentence(&option_line(p, Some(&m.name), &o.name))))
            .collect();
        return Ok(format!("{head} {}", lines.join(" ")));
    }
    if let Some(e) = &p.english {
        return Ok(e.clone());
    }
    Ok(match &p.body {
        Body::Inference { premises } => {
            let mut parts = vec!["You have a hand of several cards.".to_string()];
            parts.extend(premises.iter().map(|x| premise_sentence(p, x)));
            parts.join(" ")
        }
        Body::Quantified { premises } => {
            premises.iter().map(|q| sentence(&quant_phrase(p, q))).collect::<Vec<_>>().join(" ")
        }
        Body::Selection { cards, .. } => cards_vignette(cards),
        Body::Probability { evidence, .. } if evidence.is_empty() => String::new(),
        Body::Probability { evidence, .. } => sentence(&conj_phrase(p, &state_lits(evidence))),
        Body::Decision { .. } => unreachable!(),
    })
}

fn production_suffix(p: &Problem) -> String {
    match &p.body {
        Body::Inference { .. } | Body::Quantified { .. } => PRODUCTION_SUFFIX.to_string(),
        Body::Selection { rule, .. } => format!(
            "Which cards do you have to turn over to determine if the following statement is true? {}",
            rule_sentence(p, rule)
        ),
        Body::Probability { hypotheses, .. } => {
            let items: Vec<String> = hypotheses.iter().map(|h| sentence(&hypothesis_phrase(p, h))).collect();
            format!("Please rank order by probability (highest to lowest) the following: {}", items.join(" "))
        }
        Body::Decision { .. } => String::new(),
    }
}

fn query_suffix(p: &Problem, frame: Option<&str>) -> Result<String, RenderError> {
    let x = query_text(p, frame)?;
    Ok(match &p.body {
        Body::Selection { rule, .. } => {
            format!(
                "Consider the following statement: {} Does it follow that {x} to determine if the statement is true?",
                rule_sentence(p, rule)
            )
        }
        _ => format!("Does it follow that {x}?"),
    })
}

/// Renders one frame of a problem. `frame` names a menu for decision
/// problems and is ignored otherwise.
pub fn render_frame(p: &Problem, frame: Option<&str>, cond: Condition, tpl: Template) -> Result<String, RenderError> {
    let frame = if matches!(p.body, Body::Decision { .. }) { frame } else { None };
    let base = vignette(p, frame)?;
    let suffix = match cond {
        Condition::Production => production_suffix(p),
        Condition::Query => query_suffix(p, frame)?,
    };
    let prompt = [base, suffix].into_iter().filter(|s| !s.is_empty()).collect::<Vec<_>>().join(" ");
    Ok(tpl.wrap(&prompt))
}

/// Renders the problem's first frame.
pub fn render_prompt(p: &Problem, cond: Condition, tpl: Template) -> Result<String, RenderError> {
    let frames = p.frames();
    render_frame(p, frames[0].as_deref(), cond, tpl)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::dsl::parse_problem;

    const ILLUSORY: &str = "problem illusory-1\nkind: inference\npremise: (ace & queen) | (king & jack)\npremise: ace\nask: production\nexpect: queen\n";

    #[test]
    fn production_prompt() {
        let p = parse_problem(ILLUSORY).unwrap();
        let text = render_prompt(&p, Condition::Production, Template::None).unwrap();
        assert_eq!(
            text,
            "You have a hand of several cards. There is an ace and a queen in the hand, or else there is a king \
             and a jack in the hand. There is an ace in the hand. What, if anything, follows?"
        );
    }

    #[test]
    fn query_prompt_uses_expected() {
        let p = parse_problem(ILLUSORY).unwrap();
        let text = render_prompt(&p, Condition::Query, Template::None).unwrap();
        assert!(text.ends_with("Does it follow that there is a queen?"), "{text}");
    }

    #[test]
    fn templates_wrap_prompt() {
        let p = parse_problem(ILLUSORY).unwrap();
        let etr = render_prompt(&p, Condition::Production, Template::Etr).unwrap();
        assert!(etr.starts_with("Answer the following question according to this procedure:"));
        assert!(etr.contains("turn each premise into a question"));
        let ctl = render_prompt(&p, Condition::Production, Template::Control).unwrap();
        assert!(ctl.starts_with("Reason step-by-step for the following problem. You have a hand"));
    }

    #[test]
    fn query_without_target_fails() {
        let p = parse_problem(&ILLUSORY.replace("expect: queen\n", "")).unwrap();
        assert_eq!(
            render_prompt(&p, Condition::Query, Template::None).unwrap_err(),
            RenderError::NoQueryTarget("illusory-1".into())
        );
    }

    #[test]
    fn articles() {
        assert_eq!(article("ace"), "an");
        assert_eq!(article("E"), "an");
        assert_eq!(article("C"), "a");
        assert_eq!(article("4"), "a");
        assert_eq!(article("8"), "an");
        assert_eq!(article("queen"), "a");
    }
}
