use super::OracleError;
use crate::logic::State;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypothesis {
    pub name: String,
    pub state: State,
}

/// A total preorder over hypotheses; a higher rank means judged more probable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankingJudgment {
    pub hypotheses: Vec<Hypothesis>,
    pub rank: Vec<u32>,
}

impl RankingJudgment {
    pub fn new(hypotheses: Vec<Hypothesis>, rank: Vec<u32>) -> Result<Self, OracleError> {
        if hypotheses.len() != rank.len() {
            return Err(OracleError::Ranking { ranks: rank.len(), hypotheses: hypotheses.len() });
        }
        Ok(RankingJudgment { hypotheses, rank })
    }

    /// Hypothesis names from most to least probable; ties keep input order.
    pub fn order(&self) -> Vec<&str> {
        let mut idx: Vec<usize> = (0..self.hypotheses.len()).collect();
        idx.sort_by(|a, b| self.rank[*b].cmp(&self.rank[*a]));
        idx.into_iter().map(|i| self.hypotheses[i].name.as_str()).collect()
    }
}

/// A conjunction (`superset`) ranked strictly above one of its conjuncts
/// (`subset`). Indices refer to the judgment's hypotheses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CoherenceViolation {
    pub superset: usize,
    pub subset: usize,
}

pub fn coherence_violations(r: &RankingJudgment) -> Vec<CoherenceViolation> {
    let mut out = Vec::new();
    for (i, big) in r.hypotheses.iter().enumerate() {
        for (j, small) in r.hypotheses.iter().enumerate() {
            if i != j && big.state.is_superset(&small.state) && r.rank[i] > r.rank[j] {
                out.push(CoherenceViolation { superset: i, subset: j });
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hyp(name: &str, lits: &[&str]) -> Hypothesis {
        Hypothesis { name: name.into(), state: State::parse_literals(lits.iter().copied()).unwrap() }
    }

    fn linda(rank: Vec<u32>) -> RankingJudgment {
        RankingJudgment::new(vec![hyp("teller", &["teller"]), hyp("both", &["teller", "feminist"])], rank).unwrap()
    }

    #[test]
    fn conjunction_above_conjunct() {
        assert_eq!(coherence_violations(&linda(vec![0, 1])), vec![CoherenceViolation { superset: 1, subset: 0 }]);
    }

    #[test]
    fn coherent_and_tied_rankings() {
        assert!(coherence_violations(&linda(vec![1, 0])).is_empty());
        assert!(coherence_violations(&linda(vec![1, 1])).is_empty());
    }

    #[test]
    fn rank_length_checked() {
        assert!(RankingJudgment::new(vec![hyp("a", &["a"])], vec![]).is_err());
    }

    #[test]
    fn order_descending() {
        assert_eq!(linda(vec![0, 1]).order(), vec!["both", "teller"]);
    }
}
