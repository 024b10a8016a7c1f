use std::collections::BTreeSet;

use super::OracleError;

/// The options selected from a menu. More than one selected option means
/// the chooser is indifferent among them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MenuChoice {
    pub menu: BTreeSet<String>,
    pub chosen: BTreeSet<String>,
}

impl MenuChoice {
    pub fn new<M, C>(menu: M, chosen: C) -> Result<Self, OracleError>
    where
        M: IntoIterator,
        M::Item: Into<String>,
        C: IntoIterator,
        C::Item: Into<String>,
    {
        let menu: BTreeSet<String> = menu.into_iter().map(Into::into).collect();
        let chosen: BTreeSet<String> = chosen.into_iter().map(Into::into).collect();
        if chosen.is_empty() {
            return Err(OracleError::Menu("nothing chosen".into()));
        }
        if let Some(stray) = chosen.iter().find(|c| !menu.contains(*c)) {
            return Err(OracleError::Menu(format!("`{stray}` is not on the menu")));
        }
        Ok(MenuChoice { menu, chosen })
    }
}

/// Indices of a pair of choices where the narrower menu is contained in the
/// wider one.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ChoiceViolation {
    pub narrower: usize,
    pub wider: usize,
}

/// Flags menu pairs `M1 ⊆ M2` where something chosen from `M2` is available
/// in `M1`, yet the selection from `M1` differs from what `M2`'s selection
/// keeps of `M1`. Equal menus are compared once.
pub fn choice_consistency(choices: &[MenuChoice]) -> Vec<ChoiceViolation> {
    let mut out = Vec::new();
    for (i, a) in choices.iter().enumerate() {
        for (j, b) in choices.iter().enumerate() {
            if i == j || !a.menu.is_subset(&b.menu) || (a.menu == b.menu && j < i) {
                continue;
            }
            let kept: BTreeSet<String> = b.chosen.intersection(&a.menu).cloned().collect();
            if !kept.is_empty() && kept != a.chosen {
                out.push(ChoiceViolation { narrower: i, wider: j });
            }
        }
    }
    out
}
