use std::fmt;

use super::OracleError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SideKind {
    Letter,
    Number,
}

impl SideKind {
    pub fn of(token: &str) -> SideKind {
        if !token.is_empty() && token.chars().all(|c| c.is_ascii_digit()) {
            SideKind::Number
        } else {
            SideKind::Letter
        }
    }

    fn other(self) -> SideKind {
        match self {
            SideKind::Letter => SideKind::Number,
            SideKind::Number => SideKind::Letter,
        }
    }
}

/// A card with one visible face. The hidden face is of the other kind.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Card {
    pub visible: String,
    pub side: SideKind,
}

impl Card {
    pub fn new(visible: impl Into<String>) -> Card {
        let visible = visible.into();
        let side = SideKind::of(&visible);
        Card { visible, side }
    }

    pub fn with_side(visible: impl Into<String>, side: SideKind) -> Result<Card, OracleError> {
        let visible = visible.into();
        if SideKind::of(&visible) != side {
            return Err(OracleError::CardKind(visible));
        }
        Ok(Card { visible, side })
    }
}

/// "If a card has `antecedent` on one side then it has `consequent` on the
/// other side."
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CardRule {
    pub antecedent: String,
    pub consequent: String,
}

impl fmt::Display for CardRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "if {} then {}", self.antecedent, self.consequent)
    }
}

impl CardRule {
    fn falsified_by(&self, a: &str, b: &str) -> bool {
        (a == self.antecedent && b != self.consequent) || (b == self.antecedent && a != self.consequent)
    }

    /// Candidate values for a hidden face: the rule's tokens of that kind plus
    /// one token distinct from both.
    fn hidden_values(&self, kind: SideKind) -> Vec<String> {
        let mut vals: Vec<String> =
            [&self.antecedent, &self.consequent].into_iter().filter(|t| SideKind::of(t) == kind).cloned().collect();
        let filler = match kind {
            SideKind::Number => (0..).map(|i: u32| i.to_string()).find(|t| !vals.contains(t)),
            SideKind::Letter => ["X", "Y", "Z"].iter().map(|s| s.to_string()).find(|t| !vals.contains(t)),
        };
        vals.extend(filler);
        vals
    }
}

/// Visible tokens of the cards that could falsify the rule, in card order.
pub fn wason_correct(cards: &[Card], rule: &CardRule) -> Vec<String> {
    cards
        .iter()
        .filter(|c| rule.hidden_values(c.side.other()).iter().any(|h| rule.falsified_by(&c.visible, h)))
        .map(|c| c.visible.clone())
        .collect()
}
