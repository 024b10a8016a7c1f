//! Wilcoxon signed-rank test for paired samples.

use statrs::distribution::{ContinuousCDF, Normal};
use thiserror::Error;

/// Samples with at most this many non-zero differences use the exact null
/// distribution.
pub const EXACT_LIMIT: usize = 25;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StatsError {
    #[error("paired samples differ in length ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("paired samples are empty")]
    Empty,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ZeroPolicy {
    /// Drop zero differences before ranking.
    #[default]
    Discard,
    /// Rank zero differences with the rest, then leave them out of the statistic.
    Pratt,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Exact,
    Normal,
    Degenerate,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Wilcoxon {
    pub p_value: f64,
    /// Sum of ranks of the positive differences `x - y`.
    pub statistic: f64,
    /// Differences that entered the statistic.
    pub n: usize,
    pub method: Method,
    pub note: Option<String>,
}

/// Average ranks of `values` (1-based), doubled so ties stay integral.
fn doubled_ranks(values: &[f64]) -> Vec<u64> {
    let mut idx: Vec<usize> = (0..values.len()).collect();
    idx.sort_by(|a, b| values[*a].total_cmp(&values[*b]));
    let mut ranks = vec![0; values.len()];
    let mut i = 0;
    while i < idx.len() {
        let mut j = i;
        while j + 1 < idx.len() && values[idx[j + 1]] == values[idx[i]] {
            j += 1;
        }
        // positions i..=j share the rank (i+1 + j+1)/2
        let doubled = (i + 1 + j + 1) as u64;
        for k in i..=j {
            ranks[idx[k]] = doubled;
        }
        i = j + 1;
    }
    ranks
}

fn exact_p(ranks: &[u64], w: u64) -> f64 {
    let total: u64 = ranks.iter().sum();
    let mut counts = vec![0f64; total as usize + 1];
    counts[0] = 1.0;
    let mut reach = 0usize;
    for &r in ranks {
        let r = r as usize;
        for s in (0..=reach).rev() {
            if counts[s] != 0.0 {
                counts[s + r] += counts[s];
            }
        }
        reach += r;
    }
    let all: f64 = counts.iter().sum();
    let lower: f64 = counts[..=w as usize].iter().sum::<f64>() / all;
    let upper: f64 = counts[w as usize..].iter().sum::<f64>() / all;
    (2.0 * lower.min(upper)).min(1.0)
}

fn normal_p(ranks: &[u64], w: u64) -> f64 {
    // ranks are doubled: rescale moments accordingly
    let sum: f64 = ranks.iter().map(|r| *r as f64 / 2.0).sum();
    let sum_sq: f64 = ranks.iter().map(|r| (*r as f64 / 2.0).powi(2)).sum();
    let mean = sum / 2.0;
    let sd = (sum_sq / 4.0).sqrt();
    if sd == 0.0 {
        return 1.0;
    }
    let dev = ((w as f64 / 2.0) - mean).abs() - 0.5;
    let z = dev.max(0.0) / sd;
    let std = Normal::new(0.0, 1.0).expect("unit normal");
    (2.0 * (1.0 - std.cdf(z))).clamp(0.0, 1.0)
}

pub fn wilcoxon_signed_rank(x: &[f64], y: &[f64]) -> Result<Wilcoxon, StatsError> {
    wilcoxon_with(x, y, ZeroPolicy::Discard)
}

/// Two-sided Wilcoxon signed-rank p-value for paired samples `x`, `y`.
pub fn wilcoxon_with(x: &[f64], y: &[f64], zeros: ZeroPolicy) -> Result<Wilcoxon, StatsError> {
    if x.len() != y.len() {
        return Err(StatsError::LengthMismatch(x.len(), y.len()));
    }
    if x.is_empty() {
        return Err(StatsError::Empty);
    }
    let diffs: Vec<f64> = x.iter().zip(y).map(|(a, b)| a - b).collect();
    let ranked: Vec<f64> = match zeros {
        ZeroPolicy::Discard => diffs.iter().copied().filter(|d| *d != 0.0).collect(),
        ZeroPolicy::Pratt => diffs.clone(),
    };
    let all_ranks = doubled_ranks(&ranked.iter().map(|d| d.abs()).collect::<Vec<_>>());
    let (ranks, positive): (Vec<u64>, Vec<bool>) =
        ranked.iter().zip(&all_ranks).filter(|(d, _)| **d != 0.0).map(|(d, r)| (*r, *d > 0.0)).unzip();
    if ranks.is_empty() {
        return Ok(Wilcoxon {
            p_value: 1.0,
            statistic: 0.0,
            n: 0,
            method: Method::Degenerate,
            note: Some("all differences are zero".into()),
        });
    }
    let w: u64 = ranks.iter().zip(&positive).filter(|(_, p)| **p).map(|(r, _)| *r).sum();
    let (p_value, method) = if ranks.len() <= EXACT_LIMIT {
        (exact_p(&ranks, w), Method::Exact)
    } else {
        (normal_p(&ranks, w), Method::Normal)
    };
    Ok(Wilcoxon { p_value, statistic: w as f64 / 2.0, n: ranks.len(), method, note: None })
}

/// Significance band used in reports: `**` for p ≤ 0.01, `*` for p ≤ 0.05.
pub fn significance(p: f64) -> &'static str {
    if p <= 0.01 {
        "**"
    } else if p <= 0.05 {
        "*"
    } else {
        ""
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn uniform_shift_of_five() {
        let r = wilcoxon_signed_rank(&[1.0, 2.0, 3.0, 4.0, 5.0], &[2.0, 3.0, 4.0, 5.0, 6.0]).unwrap();
        assert_eq!(r.p_value, 0.0625);
        assert_eq!(r.method, Method::Exact);
    }

    #[test]
    fn identical_samples() {
        let r = wilcoxon_signed_rank(&[1.0, 0.0], &[1.0, 0.0]).unwrap();
        assert_eq!(r.p_value, 1.0);
        assert_eq!(r.method, Method::Degenerate);
    }

    #[test]
    fn three_discordant_pairs() {
        let x = [1.0, 1.0, 1.0, 0.0, 1.0];
        let y = [0.0, 0.0, 0.0, 0.0, 1.0];
        assert_eq!(wilcoxon_signed_rank(&x, &y).unwrap().p_value, 0.25);
    }

    #[test]
    fn tie_ranks_average() {
        assert_eq!(doubled_ranks(&[1.0, 1.0, 2.0]), vec![3, 3, 6]);
        assert_eq!(doubled_ranks(&[3.0, 1.0, 2.0]), vec![6, 2, 4]);
    }

    #[test]
    fn pratt_keeps_zero_ranks() {
        let x = [0.0, 1.0, 2.0];
        let y = [0.0, 0.0, 0.0];
        let discard = wilcoxon_with(&x, &y, ZeroPolicy::Discard).unwrap();
        let pratt = wilcoxon_with(&x, &y, ZeroPolicy::Pratt).unwrap();
        assert_eq!(discard.statistic, 3.0);
        assert_eq!(pratt.statistic, 5.0);
    }

    #[test]
    fn large_sample_uses_normal() {
        let x: Vec<f64> = (0..40).map(|i| i as f64).collect();
        let y: Vec<f64> = (0..40).map(|i| i as f64 + if i % 3 == 0 { -1.0 } else { 1.0 }).collect();
        let r = wilcoxon_signed_rank(&x, &y).unwrap();
        assert_eq!(r.method, Method::Normal);
        assert!(r.p_value > 0.0 && r.p_value < 1.0);
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(wilcoxon_signed_rank(&[1.0], &[]).unwrap_err(), StatsError::LengthMismatch(1, 0));
        assert_eq!(wilcoxon_signed_rank(&[], &[]).unwrap_err(), StatsError::Empty);
    }
}
