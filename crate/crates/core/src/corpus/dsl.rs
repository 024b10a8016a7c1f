//! Line-oriented problem language.
//!
//! ```text
//! problem illusory-ace-queen
//! kind: inference
//! premise: (ace & queen) | (king & jack)
//! premise: ace
//! ask: production
//! expect: queen
//! ```
//!
//! Expressions: `disj := conj ('|' conj)+`, `cond := 'if' literal 'then' conj`,
//! `conj := literal ('&' literal)*`, `literal := '~'? ident`. Disjuncts may
//! be parenthesized. Blank lines and lines starting with `#` are ignored.

use std::collections::BTreeMap;

use thiserror::Error;

use super::problem::{Ask, Body, Menu, Prediction, Problem, ProblemKind};
use crate::engine::{interpret_premise, Conclusion, Premise};
use crate::grounding::QuantPremise;
use crate::judgment::{Choice, ChoiceMode, DecisionOption};
use crate::logic::{Atom, Literal, State};
use crate::oracles::{Card, CardRule, Hypothesis};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

/// Error inside a single value, positioned relative to the value start.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExprError {
    pub offset: usize,
    pub message: String,
}

impl ExprError {
    fn new(offset: usize, message: impl Into<String>) -> Self {
        ExprError { offset, message: message.into() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    LParen,
    RParen,
    And,
    Or,
    Not,
    If,
    Then,
    Ident(String),
}

fn is_ident_char(c: char) -> bool {
    c.is_alphanumeric() || matches!(c, '_' | '-' | '.' | '@')
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>, ExprError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let tok = match c {
            _ if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '&' => Tok::And,
            '|' => Tok::Or,
            '~' => Tok::Not,
            _ if is_ident_char(c) => {
                let start = i;
                while i < chars.len() && is_ident_char(chars[i]) {
                    i += 1;
                }
                let word: String = chars[start..i].iter().collect();
                let tok = match word.as_str() {
                    "if" => Tok::If,
                    "then" => Tok::Then,
                    _ => Tok::Ident(word),
                };
                out.push((start, tok));
                continue;
            }
            other => return Err(ExprError::new(i, format!("unexpected character `{other}`"))),
        };
        out.push((i, tok));
        i += 1;
    }
    Ok(out)
}

struct Cursor {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Cursor {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|(o, _)| *o).unwrap_or(self.end)
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn literal(&mut self) -> Result<Literal, ExprError> {
        let negated = self.eat(&Tok::Not);
        let at = self.offset();
        match self.toks.get(self.pos) {
            Some((_, Tok::Ident(name))) => {
                let atom = Atom::new(name.clone()).map_err(|e| ExprError::new(at, e.to_string()))?;
                self.pos += 1;
                Ok(if negated { Literal::neg(atom) } else { Literal::pos(atom) })
            }
            Some((_, t)) => Err(ExprError::new(at, format!("expected a literal, found {}", describe(t)))),
            None => Err(ExprError::new(at, "expected a literal, found end of input")),
        }
    }

    fn conj(&mut self) -> Result<Vec<Literal>, ExprError> {
        let start = self.offset();
        let mut lits = vec![self.literal()?];
        while self.eat(&Tok::And) {
            lits.push(self.literal()?);
        }
        check_consistent(&lits, start)?;
        Ok(lits)
    }

    fn disjunct(&mut self) -> Result<Vec<Literal>, ExprError> {
        if self.eat(&Tok::LParen) {
            let c = self.conj()?;
            if !self.eat(&Tok::RParen) {
                return Err(self.unexpected("`)`"));
            }
            Ok(c)
        } else {
            self.conj()
        }
    }

    fn unexpected(&self, wanted: &str) -> ExprError {
        match self.peek() {
            Some(t) => ExprError::new(self.offset(), format!("expected {wanted}, found {}", describe(t))),
            None => ExprError::new(self.offset(), format!("expected {wanted}, found end of input")),
        }
    }

    fn finish(&self) -> Result<(), ExprError> {
        match self.peek() {
            None => Ok(()),
            Some(t) => Err(ExprError::new(self.offset(), format!("unexpected {}", describe(t)))),
        }
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::LParen => "`(`".into(),
        Tok::RParen => "`)`".into(),
        Tok::And => "`&`".into(),
        Tok::Or => "`|`".into(),
        Tok::Not => "`~`".into(),
        Tok::If => "`if`".into(),
        Tok::Then => "`then`".into(),
        Tok::Ident(s) => format!("`{s}`"),
    }
}

fn check_consistent(lits: &[Literal], offset: usize) -> Result<(), ExprError> {
    State::new(lits.iter().cloned()).map(|_| ()).map_err(|e| ExprError::new(offset, e.to_string()))
}

fn cursor(text: &str) -> Result<Cursor, ExprError> {
    Ok(Cursor { toks: tokenize(text)?, pos: 0, end: text.chars().count() })
}

/// Parses a premise expression.
pub fn parse_expr(text: &str) -> Result<Premise, ExprError> {
    let mut c = cursor(text)?;
    if c.eat(&Tok::If) {
        let antecedent = c.conj()?;
        if !c.eat(&Tok::Then) {
            return Err(c.unexpected("`then`"));
        }
        let consequent = c.conj()?;
        c.finish()?;
        return Ok(Premise::Conditional { antecedent, consequent });
    }
    let mut disjuncts = vec![c.disjunct()?];
    while c.eat(&Tok::Or) {
        disjuncts.push(c.disjunct()?);
    }
    c.finish()?;
    if disjuncts.len() == 1 {
        Ok(Premise::Categorical(disjuncts.remove(0)))
    } else {
        Ok(Premise::Disjunction(disjuncts))
    }
}

pub fn parse_conj(text: &str) -> Result<State, ExprError> {
    let mut c = cursor(text)?;
    let lits = c.conj()?;
    c.finish()?;
    State::new(lits).map_err(|e| ExprError::new(0, e.to_string()))
}

struct Line<'a> {
    no: usize,
    /// 1-based column of `value`'s first character.
    value_col: usize,
    head: &'a str,
    value: &'a str,
}

impl Line<'_> {
    fn err(&self, offset: usize, message: impl Into<String>) -> ParseError {
        ParseError { line: self.no, column: self.value_col + offset, message: message.into() }
    }

    fn expr_err(&self, e: ExprError) -> ParseError {
        self.err(e.offset, e.message)
    }
}

fn split_line(no: usize, raw: &str) -> Result<Line<'_>, ParseError> {
    let indent = raw.len() - raw.trim_start().len();
    let text = raw.trim();
    if let Some(rest) = text.strip_prefix("problem ") {
        let value = rest.trim();
        let col = indent + text.len() - rest.len() + (rest.len() - rest.trim_start().len()) + 1;
        return Ok(Line { no, value_col: col, head: "problem", value });
    }
    let Some(colon) = text.find(':') else {
        return Err(ParseError { line: no, column: indent + 1, message: "expected `key: value`".into() });
    };
    let head = text[..colon].trim();
    let after = &text[colon + 1..];
    let value = after.trim();
    let lead = after.len() - after.trim_start().len();
    let value_col = indent + text[..colon + 1 + lead].chars().count() + 1;
    Ok(Line { no, value_col, head, value })
}

#[derive(Default)]
struct Builder {
    id: String,
    line: usize,
    kind: Option<ProblemKind>,
    english: Option<String>,
    premises: Vec<Premise>,
    quantified: Vec<QuantPremise>,
    cards: Option<Vec<Card>>,
    rule: Option<CardRule>,
    evidence: Option<State>,
    hypotheses: Vec<Hypothesis>,
    congruence: Vec<(Literal, Literal)>,
    menus: Vec<Menu>,
    priorities: Option<State>,
    expansions: BTreeMap<String, State>,
    modes: BTreeMap<String, ChoiceMode>,
    phrases: BTreeMap<String, String>,
    ask: Option<Ask>,
    expect: Option<(usize, usize, String)>,
    manual_review: bool,
    used: Vec<(&'static str, usize)>,
}

fn single_word<'a>(line: &Line<'a>, head: &'a str, key: &str) -> Result<&'a str, ParseError> {
    let arg = head[key.len()..].trim();
    if arg.is_empty() || arg.contains(char::is_whitespace) {
        return Err(ParseError { line: line.no, column: 1, message: format!("`{key}` needs exactly one name") });
    }
    Ok(arg)
}

impl Builder {
    fn apply(&mut self, line: &Line<'_>) -> Result<(), ParseError> {
        let head = line.head;
        let value = line.value;
        let first = head.split_whitespace().next().unwrap_or("");
        match first {
            "kind" => {
                let kind = ProblemKind::parse(value).ok_or_else(|| line.err(0, format!("unknown kind `{value}`")))?;
                self.kind = Some(kind);
            }
            "english" => self.english = Some(value.to_string()),
            "premise" => {
                self.used.push(("premise", line.no));
                if let Some(q) = QuantPremise::parse(value) {
                    self.quantified.push(q);
                } else {
                    let p = parse_expr(value).map_err(|e| line.expr_err(e))?;
                    interpret_premise(&p).map_err(|e| line.err(0, e.to_string()))?;
                    self.premises.push(p);
                }
            }
            "cards" => {
                self.used.push(("cards", line.no));
                self.cards = Some(value.split_whitespace().map(Card::new).collect());
            }
            "rule" => {
                self.used.push(("rule", line.no));
                let words: Vec<&str> = value.split_whitespace().collect();
                let ["if", a, "then", c] = words.as_slice() else {
                    return Err(line.err(0, "expected `if <token> then <token>`"));
                };
                self.rule = Some(CardRule { antecedent: a.to_string(), consequent: c.to_string() });
            }
            "evidence" => {
                self.used.push(("evidence", line.no));
                self.evidence = Some(parse_conj(value).map_err(|e| line.expr_err(e))?);
            }
            "hyp" => {
                self.used.push(("hyp", line.no));
                let name = single_word(line, head, "hyp")?;
                let state = parse_conj(value).map_err(|e| line.expr_err(e))?;
                self.hypotheses.push(Hypothesis { name: name.to_string(), state });
            }
            "congruent" => {
                self.used.push(("congruent", line.no));
                let Some((a, b)) = value.split_once("->") else {
                    return Err(line.err(0, "expected `<literal> -> <literal>`"));
                };
                let a = Literal::parse(a).map_err(|e| line.err(0, e.to_string()))?;
                let b = Literal::parse(b).map_err(|e| line.err(0, e.to_string()))?;
                self.congruence.push((a, b));
            }
            "menu" => {
                self.used.push(("menu", line.no));
                let menu = single_word(line, head, "menu")?;
                let (opt_part, feats) = match value.split_once(':') {
                    Some((o, f)) => (o.trim(), Some(f.trim())),
                    None => (value, None),
                };
                let Some(opt) = opt_part.strip_prefix("opt ").map(str::trim).filter(|o| !o.is_empty()) else {
                    return Err(line.err(0, "expected `opt <name>[: <conj>]`"));
                };
                let features = match feats {
                    Some(f) if !f.is_empty() => {
                        let off = value
                            .find(':')
                            .map(|i| i + 1 + (value[i + 1..].len() - value[i + 1..].trim_start().len()))
                            .unwrap_or(0);
                        parse_conj(f).map_err(|e| line.err(off + e.offset, e.message))?
                    }
                    _ => State::empty(),
                };
                let option = DecisionOption { name: opt.to_string(), features };
                for m in &self.menus {
                    if let Some(o) = m.options.iter().find(|o| o.name == option.name) {
                        if o.features != option.features {
                            return Err(line.err(0, format!("option `{opt}` declared with different features")));
                        }
                    }
                }
                match self.menus.iter_mut().find(|m| m.name == menu) {
                    Some(m) if m.options.iter().any(|o| o.name == option.name) => {
                        return Err(line.err(0, format!("option `{opt}` repeated in menu `{menu}`")));
                    }
                    Some(m) => m.options.push(option),
                    None => self.menus.push(Menu { name: menu.to_string(), options: vec![option] }),
                }
            }
            "priorities" => {
                self.used.push(("priorities", line.no));
                self.priorities = Some(parse_conj(value).map_err(|e| line.expr_err(e))?);
            }
            "expand" => {
                self.used.push(("expand", line.no));
                let opt = single_word(line, head, "expand")?;
                self.expansions.insert(opt.to_string(), parse_conj(value).map_err(|e| line.expr_err(e))?);
            }
            "mode" => {
                self.used.push(("mode", line.no));
                let menu = single_word(line, head, "mode")?;
                let mode = ChoiceMode::from_label(value)
                    .ok_or_else(|| line.err(0, format!("unknown choice mode `{value}`")))?;
                self.modes.insert(menu.to_string(), mode);
            }
            "phrase" => {
                let key = single_word(line, head, "phrase")?;
                self.phrases.insert(key.to_string(), value.to_string());
            }
            "ask" => {
                let ask = if value == "production" {
                    Ask::Production
                } else if value == "query" {
                    Ask::Query(None)
                } else if let Some(target) = value.strip_prefix("query ") {
                    let off = value.len() - target.trim_start().len();
                    let state = parse_conj(target).map_err(|e| line.err(off + e.offset, e.message))?;
                    Ask::Query(Some(state))
                } else {
                    return Err(line.err(0, "expected `production` or `query [<conj>]`"));
                };
                self.ask = Some(ask);
            }
            "expect" => self.expect = Some((line.no, line.value_col, value.to_string())),
            "review" => {
                if value != "manual" {
                    return Err(line.err(0, "expected `manual`"));
                }
                self.manual_review = true;
            }
            _ => return Err(ParseError { line: line.no, column: 1, message: format!("unknown key `{head}`") }),
        }
        Ok(())
    }

    fn finish(self) -> Result<Problem, ParseError> {
        let at = |line: usize, message: String| ParseError { line, column: 1, message };
        let kind = self.kind.ok_or_else(|| at(self.line, format!("problem `{}` has no `kind`", self.id)))?;
        let allowed: &[&str] = match kind {
            ProblemKind::Inference | ProblemKind::Quantified => &["premise"],
            ProblemKind::Selection => &["cards", "rule"],
            ProblemKind::Probability => &["evidence", "hyp", "congruent"],
            ProblemKind::Decision => &["menu", "priorities", "expand", "mode"],
        };
        if let Some((key, line)) = self.used.iter().find(|(k, _)| !allowed.contains(k)) {
            return Err(at(*line, format!("`{key}` is not valid for {kind} problems")));
        }
        let body = match kind {
            ProblemKind::Inference => {
                if !self.quantified.is_empty() {
                    return Err(at(self.line, "quantified premise in an inference problem".into()));
                }
                if self.premises.is_empty() {
                    return Err(at(self.line, "inference problem without premises".into()));
                }
                Body::Inference { premises: self.premises }
            }
            ProblemKind::Quantified => {
                if !self.premises.is_empty() {
                    return Err(at(self.line, "propositional premise in a quantified problem".into()));
                }
                Body::Quantified { premises: self.quantified }
            }
            ProblemKind::Selection => Body::Selection {
                cards: self.cards.ok_or_else(|| at(self.line, "selection problem without `cards`".into()))?,
                rule: self.rule.ok_or_else(|| at(self.line, "selection problem without `rule`".into()))?,
            },
            ProblemKind::Probability => {
                if self.hypotheses.is_empty() {
                    return Err(at(self.line, "probability problem without hypotheses".into()));
                }
                Body::Probability {
                    evidence: self.evidence.unwrap_or_default(),
                    hypotheses: self.hypotheses,
                    congruence: self.congruence,
                }
            }
            ProblemKind::Decision => {
                if self.menus.is_empty() {
                    return Err(at(self.line, "decision problem without menus".into()));
                }
                if let Some(m) = self.modes.keys().find(|m| !self.menus.iter().any(|x| &x.name == *m)) {
                    return Err(at(self.line, format!("mode given for unknown menu `{m}`")));
                }
                Body::Decision {
                    menus: self.menus,
                    priorities: self.priorities.unwrap_or_default(),
                    expansions: self.expansions,
                    modes: self.modes,
                }
            }
        };
        let expected = match self.expect {
            Some((line, col, text)) => Some(parse_prediction(kind, &text).map_err(|e| ParseError {
                line,
                column: col + e.offset,
                message: e.message,
            })?),
            None => None,
        };
        Ok(Problem {
            id: self.id,
            body,
            english: self.english,
            phrases: self.phrases,
            ask: self.ask.unwrap_or(Ask::Production),
            expected,
            manual_review: self.manual_review,
        })
    }
}

/// Parses the kind-specific text of an `expect:` line.
pub fn parse_prediction(kind: ProblemKind, text: &str) -> Result<Prediction, ExprError> {
    let text = text.trim();
    Ok(match kind {
        ProblemKind::Inference if text == "nothing" => Prediction::Inference(Conclusion::NothingFollows),
        ProblemKind::Inference => Prediction::Inference(Conclusion::Follows(parse_conj(text)?)),
        ProblemKind::Quantified if text == "nothing" => Prediction::Quantified(Vec::new()),
        ProblemKind::Quantified => Prediction::Quantified(
            text.split(';')
                .map(|s| {
                    QuantPremise::parse(s).ok_or_else(|| ExprError::new(0, format!("bad sentence `{}`", s.trim())))
                })
                .collect::<Result<_, _>>()?,
        ),
        ProblemKind::Selection if text == "none" => Prediction::Selection(Vec::new()),
        ProblemKind::Selection => Prediction::Selection(text.split_whitespace().map(String::from).collect()),
        ProblemKind::Probability => Prediction::Ranking(
            text.split_whitespace()
                .map(|pair| {
                    let (n, r) = pair
                        .split_once('=')
                        .ok_or_else(|| ExprError::new(0, format!("expected name=rank, got `{pair}`")))?;
                    let r = r.parse().map_err(|_| ExprError::new(0, format!("bad rank `{r}`")))?;
                    Ok((n.to_string(), r))
                })
                .collect::<Result<_, ExprError>>()?,
        ),
        ProblemKind::Decision => Prediction::Decision(
            text.split_whitespace()
                .map(|pair| {
                    let (m, c) = pair
                        .split_once('=')
                        .ok_or_else(|| ExprError::new(0, format!("expected menu=choice, got `{pair}`")))?;
                    let names: Vec<String> = c.split('|').map(String::from).collect();
                    let choice =
                        if names.len() == 1 { Choice::Option(names[0].clone()) } else { Choice::Indifferent(names) };
                    Ok((m.to_string(), choice))
                })
                .collect::<Result<_, ExprError>>()?,
        ),
    })
}

/// Parses a document holding any number of problems.
pub fn parse_corpus(text: &str) -> Result<Vec<Problem>, ParseError> {
    let mut out = Vec::new();
    let mut current: Option<Builder> = None;
    for (i, raw) in text.lines().enumerate() {
        let no = i + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let line = split_line(no, raw)?;
        if line.head == "problem" {
            if line.value.is_empty() || line.value.contains(char::is_whitespace) {
                return Err(line.err(0, "expected `problem <id>`"));
            }
            if let Some(b) = current.take() {
                out.push(b.finish()?);
            }
            if out.iter().any(|p: &Problem| p.id == line.value) {
                return Err(line.err(0, format!("duplicate problem id `{}`", line.value)));
            }
            current = Some(Builder { id: line.value.to_string(), line: no, ..Default::default() });
            continue;
        }
        let Some(b) = current.as_mut() else {
            return Err(ParseError { line: no, column: 1, message: "expected `problem <id>` first".into() });
        };
        b.apply(&line)?;
    }
    if let Some(b) = current {
        out.push(b.finish()?);
    }
    Ok(out)
}

/// Parses a document holding exactly one problem.
pub fn parse_problem(text: &str) -> Result<Problem, ParseError> {
    let mut all = parse_corpus(text)?;
    match all.len() {
        1 => Ok(all.remove(0)),
        0 => Err(ParseError { line: 1, column: 1, message: "no `problem` found".into() }),
        n => Err(ParseError { line: 1, column: 1, message: format!("expected one problem, found {n}") }),
    }
}

pub fn serialize_problem(p: &Problem) -> String {
    let mut out = vec![format!("problem {}", p.id), format!("kind: {}", p.kind())];
    if let Some(e) = &p.english {
        out.push(format!("english: {e}"));
    }
    match &p.body {
        Body::Inference { premises } => out.extend(premises.iter().map(|x| format!("premise: {x}"))),
        Body::Quantified { premises } => out.extend(premises.iter().map(|x| format!("premise: {x}"))),
        Body::Selection { cards, rule } => {
            let tokens: Vec<&str> = cards.iter().map(|c| c.visible.as_str()).collect();
            out.push(format!("cards: {}", tokens.join(" ")));
            out.push(format!("rule: {rule}"));
        }
        Body::Probability { evidence, hypotheses, congruence } => {
            if !evidence.is_empty() {
                out.push(format!("evidence: {}", evidence.conj_text()));
            }
            out.extend(hypotheses.iter().map(|h| format!("hyp {}: {}", h.name, h.state.conj_text())));
            out.extend(congruence.iter().map(|(a, b)| format!("congruent: {a} -> {b}")));
        }
        Body::Decision { menus, priorities, expansions, modes } => {
            for m in menus {
                for o in &m.options {
                    if o.features.is_empty() {
                        out.push(format!("menu {}: opt {}", m.name, o.name));
                    } else {
                        out.push(format!("menu {}: opt {}: {}", m.name, o.name, o.features.conj_text()));
                    }
                }
            }
            if !priorities.is_empty() {
                out.push(format!("priorities: {}", priorities.conj_text()));
            }
            out.extend(expansions.iter().map(|(o, s)| format!("expand {o}: {}", s.conj_text())));
            out.extend(modes.iter().map(|(m, mode)| format!("mode {m}: {}", mode.label())));
        }
    }
    out.extend(p.phrases.iter().map(|(k, v)| format!("phrase {k}: {v}")));
    out.push(match &p.ask {
        Ask::Production => "ask: production".to_string(),
        Ask::Query(None) => "ask: query".to_string(),
        Ask::Query(Some(t)) => format!("ask: query {}", t.conj_text()),
    });
    if let Some(e) = &p.expected {
        out.push(format!("expect: {e}"));
    }
    if p.manual_review {
        out.push("review: manual".into());
    }
    out.join("\n") + "\n"
}

pub fn serialize_corpus(problems: &[Problem]) -> String {
    problems.iter().map(serialize_problem).collect::<Vec<_>>().join("\n")
}

#[cfg(test)]
mod tests {
    use super::*;

    const ILLUSORY: &str =
        "problem illusory-1\nkind: inference\npremise: (ace & queen) | (king & jack)\npremise: ace\nask: production\n";

    #[test]
    fn parses_illusory_document() {
        let p = parse_problem(ILLUSORY).unwrap();
        assert_eq!(p.id, "illusory-1");
        assert_eq!(p.kind(), ProblemKind::Inference);
        let Body::Inference { premises } = &p.body else { panic!() };
        assert_eq!(premises.len(), 2);
        assert!(matches!(premises[0], Premise::Disjunction(_)));
        assert_eq!(p.ask, Ask::Production);
    }

    #[test]
    fn parses_query_condition() {
        let p = parse_problem(&ILLUSORY.replace("ask: production", "ask: query queen")).unwrap();
        assert_eq!(p.ask, Ask::Query(Some(State::parse_literals(["queen"]).unwrap())));
    }

    #[test]
    fn malformed_connective_reports_position() {
        let err = parse_problem(&ILLUSORY.replace("premise: ace\n", "premise: ace && king\n")).unwrap_err();
        assert_eq!((err.line, err.column), (4, 15));
        let err = parse_problem(&ILLUSORY.replace("premise: ace\n", "premise: ace + king\n")).unwrap_err();
        assert_eq!((err.line, err.column), (4, 14));
        assert!(err.message.contains('+'));
    }

    #[test]
    fn inconsistent_literal_rejected() {
        let err = parse_problem(&ILLUSORY.replace("premise: ace\n", "premise: p & ~p\n")).unwrap_err();
        assert!(err.message.contains("inconsistent"), "{err}");
    }

    #[test]
    fn unknown_kind_rejected() {
        let err = parse_problem("problem x\nkind: riddle\n").unwrap_err();
        assert_eq!(err.line, 2);
        assert!(err.message.contains("riddle"));
    }

    #[test]
    fn complex_antecedent_rejected() {
        let err = parse_problem(&ILLUSORY.replace("premise: ace\n", "premise: if a & b then c\n")).unwrap_err();
        assert!(err.message.contains("single literal"), "{err}");
    }

    #[test]
    fn foreign_field_rejected() {
        let err = parse_problem("problem x\nkind: inference\npremise: a\ncards: E 4\n").unwrap_err();
        assert_eq!(err.line, 4);
    }

    #[test]
    fn conditional_and_disjunction_shapes() {
        assert_eq!(
            parse_expr("if ace then king").unwrap(),
            Premise::Conditional {
                antecedent: vec![Literal::parse("ace").unwrap()],
                consequent: vec![Literal::parse("king").unwrap()]
            }
        );
        assert!(matches!(parse_expr("a | b & c").unwrap(), Premise::Disjunction(ds) if ds[1].len() == 2));
        assert!(parse_expr("(a & b").is_err());
        assert!(parse_expr("if a b").is_err());
    }

    #[test]
    fn decision_document() {
        let text = "problem d\nkind: decision\nmenu m1: opt buy: fun\nmenu m1: opt skip\nmenu m2: opt buy: fun\nmenu m2: opt skip\npriorities: fun\nexpand skip: fun\nmode m2: expanded\nask: production\nexpect: m1=buy m2=buy|skip\n";
        let p = parse_problem(text).unwrap();
        assert_eq!(serialize_problem(&p), text);
        let err = parse_problem(&text.replace("menu m2: opt buy: fun", "menu m2: opt buy: joy")).unwrap_err();
        assert!(err.message.contains("different features"));
    }

    #[test]
    fn statement_requires_problem_header() {
        assert_eq!(parse_corpus("kind: inference\n").unwrap_err().line, 1);
    }
}
