use std::collections::BTreeSet;

use super::OracleError;
use crate::grounding::QuantPremise;

pub const MAX_PREDICATES: usize = 4;

// A monadic model is determined, for Some/All sentences, by which predicate
// combinations ("types") are inhabited. Every domain of size 1..=2^k realises
// exactly the non-empty sets of at most 2^k inhabited types, so enumerating
// inhabited-type sets covers all models up to that bound.
fn holds(s: &QuantPremise, inhabited: u32, preds: &[&str]) -> bool {
    let bit = |p: &str| 1u32 << preds.iter().position(|q| *q == p).expect("predicate indexed");
    let types = (0..1u32 << preds.len()).filter(|t| inhabited >> t & 1 == 1);
    match s {
        QuantPremise::Some(p, q) => {
            let mask = bit(p) | bit(q);
            types.clone().any(|t| t & mask == mask)
        }
        QuantPremise::All(p, q) => {
            let (bp, bq) = (bit(p), bit(q));
            types.clone().all(|t| t & bp == 0 || t & bq != 0)
        }
    }
}

/// Classical validity of a monadic syllogism-style inference.
pub fn monadic_entails(premises: &[QuantPremise], conclusion: &QuantPremise) -> Result<bool, OracleError> {
    let preds: BTreeSet<&str> =
        premises.iter().chain(std::iter::once(conclusion)).flat_map(|s| s.predicates()).collect();
    if preds.len() > MAX_PREDICATES {
        return Err(OracleError::PredicateCap { found: preds.len(), cap: MAX_PREDICATES });
    }
    let preds: Vec<&str> = preds.into_iter().collect();
    let n_types = 1u32 << preds.len();
    let models = 1u64..(1u64 << n_types);
    let valid = models
        .map(|m| m as u32)
        .filter(|m| premises.iter().all(|s| holds(s, *m, &preds)))
        .all(|m| holds(conclusion, m, &preds));
    Ok(valid)
}
