use std::time::Duration;

use erotetic::corpus::{builtin, Condition, Template};
use erotetic::harness::report::render_text;
use erotetic::harness::run::{cells, TranscriptRecord};
use erotetic::harness::{
    aggregate, build_key, run_bench, score, wilcoxon_signed_rank, HarnessError, Measure, RunConfig, ScoreRecord, Status,
};
use proptest::prelude::*;

// Independent exact test: float average ranks and an explicit walk over all
// 2^n sign assignments.
fn brute_p(x: &[f64], y: &[f64]) -> f64 {
    let d: Vec<f64> = x.iter().zip(y).map(|(a, b)| a - b).filter(|d| *d != 0.0).collect();
    if d.is_empty() {
        return 1.0;
    }
    let abs: Vec<f64> = d.iter().map(|v| v.abs()).collect();
    let ranks: Vec<f64> = abs
        .iter()
        .map(|v| {
            let below = abs.iter().filter(|w| *w < v).count() as f64;
            let equal = abs.iter().filter(|w| *w == v).count() as f64;
            below + (equal + 1.0) / 2.0
        })
        .collect();
    let observed: f64 = ranks.iter().zip(&d).filter(|(_, v)| **v > 0.0).map(|(r, _)| r).sum();
    let n = d.len();
    let (mut lo, mut hi) = (0u64, 0u64);
    for signs in 0..1u64 << n {
        let w: f64 = (0..n).filter(|i| signs >> i & 1 == 1).map(|i| ranks[i]).sum();
        if w <= observed + 1e-9 {
            lo += 1;
        }
        if w >= observed - 1e-9 {
            hi += 1;
        }
    }
    let total = (1u64 << n) as f64;
    (2.0 * (lo.min(hi) as f64) / total).min(1.0)
}

fn paired(max: usize) -> impl Strategy<Value = (Vec<f64>, Vec<f64>)> {
    (1..=max).prop_flat_map(|n| {
        (proptest::collection::vec(0i32..5, n), proptest::collection::vec(0i32..5, n))
            .prop_map(|(a, b)| (a.into_iter().map(f64::from).collect(), b.into_iter().map(f64::from).collect()))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn wilcoxon_is_swap_symmetric((x, y) in paired(40)) {
        let a = wilcoxon_signed_rank(&x, &y).unwrap().p_value;
        let b = wilcoxon_signed_rank(&y, &x).unwrap().p_value;
        prop_assert!((a - b).abs() < 1e-12, "{a} vs {b}");
    }

    #[test]
    fn exact_matches_enumeration((x, y) in paired(12)) {
        let p = wilcoxon_signed_rank(&x, &y).unwrap().p_value;
        prop_assert!((p - brute_p(&x, &y)).abs() < 1e-12, "{p} vs {}", brute_p(&x, &y));
    }
}

#[test]
fn worked_wilcoxon_cases() {
    let shift = wilcoxon_signed_rank(&[1.0, 2.0, 3.0, 4.0, 5.0], &[2.0, 3.0, 4.0, 5.0, 6.0]).unwrap();
    assert_eq!(shift.p_value, 2.0 / 32.0);
    assert_eq!(brute_p(&[1.0, 2.0, 3.0, 4.0, 5.0], &[2.0, 3.0, 4.0, 5.0, 6.0]), 0.0625);
    let same = wilcoxon_signed_rank(&[0.0, 1.0, 1.0], &[0.0, 1.0, 1.0]).unwrap();
    assert_eq!(same.p_value, 1.0);
    assert!(same.note.is_some());
}

fn responder(script: &str) -> Vec<String> {
    vec!["sh".into(), "-c".into(), script.into()]
}

fn config(script: &str, dir: &std::path::Path, jobs: usize) -> RunConfig {
    RunConfig {
        problems: builtin(),
        responder: responder(script),
        conditions: Condition::ALL.to_vec(),
        templates: Template::ALL.to_vec(),
        timeout: Duration::from_secs(10),
        out_dir: dir.to_path_buf(),
        jobs,
    }
}

fn untimed(ts: &[TranscriptRecord]) -> Vec<TranscriptRecord> {
    ts.iter().cloned().map(|t| TranscriptRecord { elapsed_ms: 0, ..t }).collect()
}

#[test]
fn transcripts_reproducible_across_widths() {
    let dir = tempfile::tempdir().unwrap();
    let one = run_bench(&config("tr a-z A-Z", &dir.path().join("one"), 1)).unwrap();
    let four = run_bench(&config("tr a-z A-Z", &dir.path().join("four"), 4)).unwrap();
    assert_eq!(untimed(&one.transcripts), untimed(&four.transcripts));
    let (all, _) = cells(&config("true", dir.path(), 1));
    assert_eq!(one.transcripts.len(), all.len());
    let t = &one.transcripts[0];
    assert_eq!(t.status, Status::Ok);
    assert_eq!(t.response.trim_end(), t.prompt.to_uppercase());
    assert!(dir.path().join("one/transcripts.jsonl").exists());
    assert!(dir.path().join("one/corpus.etr").exists());
}

#[test]
fn slow_responder_times_out() {
    let dir = tempfile::tempdir().unwrap();
    let mut cfg = config("sleep 5", dir.path(), 4);
    cfg.problems.truncate(1);
    cfg.timeout = Duration::from_millis(200);
    let out = run_bench(&cfg).unwrap();
    assert!(out.transcripts.iter().all(|t| t.status == Status::TimedOut));
    cfg.responder = responder("exit 1");
    assert!(run_bench(&cfg).unwrap().transcripts.iter().all(|t| t.status == Status::Failed));
}

#[test]
fn missing_responder_is_an_error() {
    let dir = tempfile::tempdir().unwrap();
    let mut cfg = config("true", dir.path(), 1);
    cfg.responder = vec!["/definitely/not/here".into()];
    assert!(matches!(run_bench(&cfg), Err(HarnessError::Spawn { .. })));
    cfg.responder.clear();
    assert!(matches!(run_bench(&cfg), Err(HarnessError::Config(_))));
}

fn echo_transcripts() -> Vec<TranscriptRecord> {
    let dir = tempfile::tempdir().unwrap();
    run_bench(&config("cat", dir.path(), 4)).unwrap().transcripts
}

#[test]
fn scoring_is_a_pure_function() {
    let key = build_key(&builtin()).unwrap();
    let ts = echo_transcripts();
    let first = score(&ts, &key, &[]);
    let mut reversed = ts.clone();
    reversed.reverse();
    assert_eq!(first, score(&ts, &key, &[]));
    assert_eq!(first, score(&reversed, &key, &[]));
}

#[test]
fn rendered_percentages_match_records() {
    let key = build_key(&builtin()).unwrap();
    let records: Vec<ScoreRecord> = score(&echo_transcripts(), &key, &[]);
    let report = aggregate(&[("echo".into(), records.clone())]);
    let text = render_text(&report);
    for template in ["none", "control", "etr"] {
        let rs: Vec<&ScoreRecord> = records.iter().filter(|r| r.template == template).collect();
        for m in Measure::ALL {
            let count = rs.iter().filter(|r| m.of(r)).count();
            let pct = (100.0 * count as f64 / rs.len() as f64).round();
            let line = format!("{:<38} {:>4.0}%  ({}/{})", m.label(), pct, count, rs.len());
            assert!(text.contains(&line), "missing `{line}`");
        }
    }
}
