//! Acceptance run: one PASS/FAIL line per criterion, with its time limit.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use erotetic::corpus::analysis::interpretations;
use erotetic::corpus::render::{CONTROL_PREFIX, ETR_PREFIX};
use erotetic::corpus::{builtin, render_prompt, Body, Condition, Problem, Template};
use erotetic::engine::{
    asserted_literals, equilibrium_conclusions, run, what_follows, Conclusion, EquilibriumConfig, Premise,
};
use erotetic::generator::{from_jsonl, generate, label, to_jsonl, Family, GenConfig, Order};
use erotetic::grounding::{existential_readback, ground, QuantPremise};
use erotetic::harness::{aggregate, build_key, run_bench, score, wilcoxon_signed_rank, Measure, RunConfig};
use erotetic::judgment::{choose, rank_hypotheses, wason_predicted, Choice, ChoiceMode};
use erotetic::oracles::{coherence_violations, entails, monadic_entails, wason_correct};
use erotetic::{Atom, Literal, PremiseInterp, State};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<(), String>;
type Criterion = (u32, &'static str, Duration, fn() -> Check);

fn ensure(cond: bool, msg: impl Into<String>) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn problem(id: &str) -> Problem {
    builtin().into_iter().find(|p| p.id == id).expect("builtin problem")
}

fn premises(p: &Problem) -> Vec<PremiseInterp> {
    let Body::Inference { premises } = &p.body else { panic!("{} is not an inference problem", p.id) };
    interpretations(premises).expect("premises interpret")
}

fn conclude(interps: &[PremiseInterp]) -> Conclusion {
    match run(interps).expect("run") {
        Some(r) => what_follows(&r.question, &asserted_literals(interps)),
        None => Conclusion::NothingFollows,
    }
}

fn state(lits: &[&str]) -> State {
    State::parse_literals(lits.iter().copied()).unwrap()
}

fn lit(text: &str) -> Literal {
    Literal::parse(text).unwrap()
}

fn c1() -> Check {
    let is = premises(&problem("illusory-ace-queen"));
    let c = conclude(&is);
    ensure(c == Conclusion::Follows(state(&["queen"])), format!("engine produced {c}"))?;
    ensure(!entails(&is, &state(&["queen"])).unwrap(), "oracle says queen is entailed")?;
    let eq = equilibrium_conclusions(&is, EquilibriumConfig::default()).map_err(|e| e.to_string())?;
    ensure(!eq.contains(&lit("queen")), "queen survives every inquiry")
}

fn c2() -> Check {
    let is = premises(&problem("modus-ponens"));
    let c = conclude(&is);
    ensure(c == Conclusion::Follows(state(&["king"])), format!("engine produced {c}"))?;
    ensure(entails(&is, &state(&["king"])).unwrap(), "king not entailed")?;
    let eq = equilibrium_conclusions(&is, EquilibriumConfig::default()).map_err(|e| e.to_string())?;
    ensure(eq.contains(&lit("king")), "king not in equilibrium")
}

fn c3() -> Check {
    let rev = conclude(&premises(&problem("illusory-ace-queen-reversed")));
    ensure(rev == Conclusion::NothingFollows, format!("reversed order produced {rev}"))?;
    let cfg = GenConfig { seed: 31, count: 1000, order: Order::Both, ..GenConfig::default() };
    let insts = generate(&cfg).map_err(|e| e.to_string())?;
    let mut pairs = 0;
    for pair in insts.chunks(2) {
        let [qf, af] = pair else { return Err("unpaired instance".into()) };
        let fwd = conclude(&premises(&qf.problem));
        let back = conclude(&premises(&af.problem));
        let fallacious: BTreeSet<Literal> = fwd
            .literals()
            .into_iter()
            .filter(|l| !entails(&premises(&qf.problem), &State::new([l.clone()]).unwrap()).unwrap())
            .collect();
        ensure(back == Conclusion::NothingFollows, format!("{} produced {back}", af.problem.id))?;
        ensure(fallacious.is_disjoint(&back.literals()), format!("{} repeats the fallacy", af.problem.id))?;
        pairs += 1;
    }
    ensure(pairs == 1000, format!("{pairs} pairs"))
}

fn c4() -> Check {
    let premises =
        [QuantPremise::Some("blue".into(), "textured".into()), QuantPremise::All("square".into(), "blue".into())];
    let g = ground(&premises).map_err(|e| e.to_string())?;
    let r = run(&g.absorption_order()).map_err(|e| e.to_string())?.ok_or("no premises")?;
    let readback = existential_readback(&r.question, &g.registry);
    let target = QuantPremise::Some("square".into(), "textured".into());
    ensure(readback == vec![target.clone()], format!("read back {readback:?}"))?;
    ensure(target.to_string() == "some square are textured", "wording")?;
    ensure(!monadic_entails(&premises, &target).unwrap(), "oracle labels it valid")
}

fn c5() -> Check {
    let Body::Selection { cards, rule } = problem("wason-E4").body else { return Err("kind".into()) };
    let predicted: BTreeSet<String> = wason_predicted(&cards, &rule).into_iter().collect();
    let correct: BTreeSet<String> = wason_correct(&cards, &rule).into_iter().collect();
    ensure(predicted == ["E", "4"].map(String::from).into(), format!("predicted {predicted:?}"))?;
    ensure(correct == ["E", "5"].map(String::from).into(), format!("correct {correct:?}"))
}

fn c6() -> Check {
    for id in ["linda", "math-genius"] {
        let Body::Probability { evidence, hypotheses, congruence } = problem(id).body else {
            return Err("kind".into());
        };
        let r = rank_hypotheses(&evidence, &hypotheses, &congruence);
        let (small, big) = (&hypotheses[0], &hypotheses[1]);
        ensure(big.state.is_superset(&small.state) && big.state != small.state, format!("{id}: encoding"))?;
        ensure(r.rank[1] > r.rank[0], format!("{id}: ranks {:?}", r.rank))?;
        let v = coherence_violations(&r);
        ensure(v.len() == 1, format!("{id}: {} violations", v.len()))?;
    }
    Ok(())
}

fn menus(id: &str) -> Vec<(String, erotetic::judgment::DecisionQuestion)> {
    let p = problem(id);
    let Body::Decision { menus, .. } = &p.body else { panic!("{id} is not a decision problem") };
    menus.iter().map(|m| (m.name.clone(), p.decision_question(m).unwrap())).collect()
}

fn c7() -> Check {
    let video = menus("video-opportunity-cost");
    let (_, d) = &video[0];
    let default = choose(d, ChoiceMode::default());
    ensure(default == Choice::Option("buy".into()), format!("default chose {default}"))?;
    let expanded = choose(d, ChoiceMode::expanded());
    ensure(matches!(expanded, Choice::Indifferent(_)), format!("expanded chose {expanded}"))?;
    let econ = menus("economist-decoy");
    let without = econ.iter().find(|(n, _)| n == "without_decoy").ok_or("menu")?;
    let with = econ.iter().find(|(n, _)| n == "with_decoy").ok_or("menu")?;
    let before = choose(&without.1, ChoiceMode::decoy());
    let after = choose(&with.1, ChoiceMode::decoy());
    ensure(before != Choice::Option("print_web".into()), format!("without decoy chose {before}"))?;
    ensure(after == Choice::Option("print_web".into()), format!("with decoy chose {after}"))
}

// Random premise sets over at most 8 atoms, plus generated families reaching
// 12 atoms.
fn random_premises(rng: &mut ChaCha8Rng) -> Vec<Premise> {
    let n_atoms = rng.gen_range(2..=8);
    let atoms: Vec<Atom> = (0..n_atoms).map(|i| Atom::new(format!("p{i}")).unwrap()).collect();
    let conj = |rng: &mut ChaCha8Rng, max: usize| -> Vec<Literal> {
        let k = rng.gen_range(1..=max.min(n_atoms));
        let mut picked: Vec<usize> = (0..n_atoms).collect();
        for i in 0..k {
            let j = rng.gen_range(i..n_atoms);
            picked.swap(i, j);
        }
        picked[..k]
            .iter()
            .map(|i| if rng.gen_bool(0.7) { Literal::pos(atoms[*i].clone()) } else { Literal::neg(atoms[*i].clone()) })
            .collect()
    };
    let count = rng.gen_range(1..=4);
    (0..count)
        .map(|_| match rng.gen_range(0..3) {
            0 => Premise::Disjunction((0..rng.gen_range(2..=3)).map(|_| conj(rng, 3)).collect()),
            1 => Premise::Conditional { antecedent: conj(rng, 1), consequent: conj(rng, 2) },
            _ => Premise::Categorical(conj(rng, 2)),
        })
        .collect()
}

fn sound(interps: &[PremiseInterp]) -> Result<bool, String> {
    let Ok(eq) = equilibrium_conclusions(interps, EquilibriumConfig::default()) else { return Ok(true) };
    for l in eq {
        if !entails(interps, &State::new([l]).unwrap()).map_err(|e| e.to_string())? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn c8() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut checked = 0;
    while checked < 1000 {
        let ps = random_premises(&mut rng);
        let Ok(is) = ps.iter().map(erotetic::engine::interpret_premise).collect::<Result<Vec<_>, _>>() else {
            continue;
        };
        ensure(sound(&is)?, format!("unsound on {ps:?}"))?;
        checked += 1;
    }
    for (apc, disjuncts) in [(1, 2), (2, 2), (2, 3), (3, 3), (2, 4), (3, 4)] {
        for family in [Family::Illusory, Family::ModusPonens] {
            let cfg = GenConfig {
                seed: 5,
                family,
                count: 40,
                atoms_per_conjunct: apc,
                disjuncts,
                order: Order::Both,
                ..GenConfig::default()
            };
            for inst in generate(&cfg).map_err(|e| e.to_string())? {
                ensure(sound(&premises(&inst.problem))?, format!("unsound on {}", inst.problem.id))?;
                checked += 1;
            }
        }
    }
    ensure(checked >= 1000, format!("{checked} instances"))
}

fn c9() -> Check {
    let cfg = GenConfig { seed: 99, count: 1000, order: Order::QuestionFirst, ..GenConfig::default() };
    let first = to_jsonl(&generate(&cfg).map_err(|e| e.to_string())?);
    let second = to_jsonl(&generate(&cfg).map_err(|e| e.to_string())?);
    ensure(first == second, "same seed, different bytes")?;
    let back = from_jsonl(&first).map_err(|e| e.to_string())?;
    ensure(back.len() == 1000, "instance count")?;
    for (inst, line) in back.iter().zip(first.lines()) {
        let relabeled = erotetic::generator::GeneratedInstance {
            prediction: label(&inst.problem).map_err(|e| e.to_string())?,
            ..inst.clone()
        };
        ensure(relabeled.to_json() == line, format!("{} relabels differently", inst.problem.id))?;
    }
    Ok(())
}

fn c10() -> Check {
    let shift = wilcoxon_signed_rank(&[1.0, 2.0, 3.0, 4.0, 5.0], &[2.0, 3.0, 4.0, 5.0, 6.0]).unwrap();
    ensure(shift.p_value == 0.0625, format!("uniform shift p = {}", shift.p_value))?;
    let same = wilcoxon_signed_rank(&[1.0, 0.0, 1.0], &[1.0, 0.0, 1.0]).unwrap();
    ensure(same.p_value == 1.0, format!("zero differences p = {}", same.p_value))?;
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for _ in 0..100 {
        let n = rng.gen_range(1..=60);
        let x: Vec<f64> = (0..n).map(|_| rng.gen_range(0..6) as f64).collect();
        let y: Vec<f64> = (0..n).map(|_| rng.gen_range(0..6) as f64).collect();
        let a = wilcoxon_signed_rank(&x, &y).unwrap().p_value;
        let b = wilcoxon_signed_rank(&y, &x).unwrap().p_value;
        ensure((a - b).abs() < 1e-12, format!("asymmetric: {a} vs {b}"))?;
    }
    Ok(())
}

fn bench_with(mode: &str, dir: &std::path::Path) -> Result<erotetic::harness::Report, String> {
    let problems = builtin();
    let cfg = RunConfig {
        problems: problems.clone(),
        responder: vec![env!("CARGO_BIN_EXE_erotetic").into(), "respond".into(), "--mode".into(), mode.into()],
        conditions: Condition::ALL.to_vec(),
        templates: Template::ALL.to_vec(),
        timeout: Duration::from_secs(30),
        out_dir: dir.join(mode),
        jobs: 4,
    };
    let out = run_bench(&cfg).map_err(|e| e.to_string())?;
    let key = build_key(&problems).map_err(|e| e.to_string())?;
    Ok(aggregate(&[(mode.to_string(), score(&out.transcripts, &key, &[]))]))
}

fn c11() -> Check {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let fallacious = builtin().iter().filter(|p| label(p).unwrap().fallacy).count();
    let etr = bench_with("etr", dir.path())?;
    for r in etr.rates.iter().filter(|r| r.measure == Measure::EtrProduced) {
        ensure(r.count == r.total && r.total == 12, format!("[{}] ETR-produced {}/{}", r.template, r.count, r.total))?;
    }
    for r in etr.rates.iter().filter(|r| r.measure == Measure::FallacyProduced) {
        ensure(
            r.count == fallacious,
            format!("[{}] fallacy-produced {}/{} vs {fallacious}", r.template, r.count, r.total),
        )?;
    }
    let oracle = bench_with("oracle", dir.path())?;
    for r in oracle.rates.iter().filter(|r| r.measure == Measure::CorrectProduced) {
        ensure(
            r.count == r.total && r.total == 12,
            format!("[{}] correct-produced {}/{}", r.template, r.count, r.total),
        )?;
    }
    Ok(())
}

fn c12() -> Check {
    let p = problem("illusory-ace-queen");
    let control = render_prompt(&p, Condition::Production, Template::Control).map_err(|e| e.to_string())?;
    let etr = render_prompt(&p, Condition::Production, Template::Etr).map_err(|e| e.to_string())?;
    ensure(control.starts_with("Reason step-by-step for the following problem."), "control wording")?;
    ensure(CONTROL_PREFIX == "Reason step-by-step for the following problem.", "control constant")?;
    ensure(etr.contains("turn each premise into a question"), "procedure wording")?;
    ensure(
        etr.starts_with(
            "Answer the following question according to this procedure: First, list the premises. Second, turn each \
             premise into a question to make a new list of questions; treat questions as possible alternatives.",
        ),
        "procedure opening",
    )?;
    ensure(etr.starts_with(ETR_PREFIX), "procedure constant")?;
    ensure(
        !control.contains("turn each premise") && !etr.contains("Reason step-by-step for the following"),
        "templates mixed",
    )
}

fn main() {
    let criteria: [Criterion; 12] = [
        (1, "illusory inference: queen, not entailed, not in equilibrium", Duration::from_secs(1), c1),
        (2, "modus ponens: king, entailed, in equilibrium", Duration::from_secs(1), c2),
        (3, "order effect on 1000 generated pairs", Duration::from_secs(30), c3),
        (4, "quantified readback and monadic invalidity", Duration::from_secs(1), c4),
        (5, "selection task predicted and correct cards", Duration::from_secs(1), c5),
        (6, "conjunction ranked above conjunct, one violation", Duration::from_secs(1), c6),
        (7, "opportunity cost and decoy choices", Duration::from_secs(1), c7),
        (8, "equilibrium soundness over 1000+ instances", Duration::from_secs(300), c8),
        (9, "generator relabeling and determinism", Duration::from_secs(60), c9),
        (10, "Wilcoxon exact cases and symmetry", Duration::from_secs(10), c10),
        (11, "end-to-end harness with scripted responders", Duration::from_secs(60), c11),
        (12, "template wording", Duration::from_secs(1), c12),
    ];
    let mut failed = 0;
    for (n, name, limit, check) in criteria {
        let start = Instant::now();
        let result = check();
        let took = start.elapsed();
        let verdict = match (&result, took <= limit) {
            (Ok(()), true) => "PASS".to_string(),
            (Ok(()), false) => format!("FAIL (over the {limit:?} limit)"),
            (Err(e), _) => format!("FAIL ({e})"),
        };
        if !verdict.starts_with("PASS") {
            failed += 1;
        }
        println!("{verdict} criterion {n:>2}: {name} [{:.3}s / {:?}]", took.as_secs_f64(), limit);
    }
    if failed > 0 {
        eprintln!("{failed} criteria failed");
        std::process::exit(1);
    }
}
