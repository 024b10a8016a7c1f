use erotetic::corpus::analysis::interpretations;
use erotetic::corpus::{
    builtin, parse_corpus, parse_problem, predict, render_frame, serialize_corpus, serialize_problem, Body, Condition,
    Prediction, Template,
};
use erotetic::engine::Conclusion;
use erotetic::generator::{generate, label, Family, GenConfig, Order};
use erotetic::oracles::{entails, monadic_entails, wason_correct};

#[test]
fn builtin_round_trips() {
    let problems = builtin();
    let text = serialize_corpus(&problems);
    assert_eq!(parse_corpus(&text).unwrap(), problems);
    assert_eq!(serialize_corpus(&parse_corpus(&text).unwrap()), text);
}

#[test]
fn generated_problems_round_trip() {
    for family in [Family::Illusory, Family::ModusPonens, Family::ConjunctionRanking, Family::DecisionFraming] {
        let cfg = GenConfig { family, count: 30, seed: 8, order: Order::Both, ..GenConfig::default() };
        for inst in generate(&cfg).unwrap() {
            let text = serialize_problem(&inst.problem);
            assert_eq!(parse_problem(&text).unwrap(), inst.problem);
        }
    }
}

#[test]
fn whitespace_is_not_significant() {
    let tidy = "problem p\nkind: inference\npremise: (a & b) | c\npremise: a\n";
    let messy = "# note\n\nproblem   p\nkind:inference\npremise:   ( a&b )|c\n\npremise: a   \n";
    assert_eq!(parse_problem(tidy).unwrap(), parse_problem(messy).unwrap());
}

// Fallacy flags recomputed straight from the oracles, kind by kind.
#[test]
fn fallacy_flags_match_oracles() {
    for p in builtin() {
        let flagged = label(&p).unwrap().fallacy;
        let pred = predict(&p).unwrap();
        let oracle_fallacy = match (&p.body, &pred) {
            (Body::Inference { premises }, Prediction::Inference(Conclusion::Follows(s))) => {
                !entails(&interpretations(premises).unwrap(), s).unwrap()
            }
            (Body::Inference { .. }, Prediction::Inference(Conclusion::NothingFollows)) => false,
            (Body::Quantified { premises }, Prediction::Quantified(rs)) => {
                rs.iter().any(|r| !monadic_entails(premises, r).unwrap())
            }
            (Body::Selection { cards, rule }, Prediction::Selection(cs)) => {
                let mut a = cs.clone();
                let mut b = wason_correct(cards, rule);
                a.sort();
                b.sort();
                a != b
            }
            (Body::Probability { hypotheses, .. }, Prediction::Ranking(rs)) => hypotheses.iter().any(|big| {
                hypotheses.iter().any(|small| {
                    let rank = |n: &str| rs.iter().find(|(m, _)| m == n).unwrap().1;
                    big.state != small.state
                        && big.state.is_superset(&small.state)
                        && rank(&big.name) > rank(&small.name)
                })
            }),
            (Body::Decision { .. }, Prediction::Decision(cs)) => {
                // each builtin menu is contained in the next, so any change of choice is inconsistent
                cs.windows(2).any(|w| w[0].1 != w[1].1)
            }
            _ => panic!("{}: prediction kind", p.id),
        };
        assert_eq!(flagged, oracle_fallacy, "{}", p.id);
    }
}

#[test]
fn nine_of_twelve_builtin_problems_are_fallacious() {
    let flags: Vec<bool> = builtin().iter().map(|p| label(p).unwrap().fallacy).collect();
    assert_eq!(flags.len(), 12);
    assert_eq!(flags.iter().filter(|f| **f).count(), 9);
}

#[test]
fn templates_prefix_the_same_problem() {
    for p in builtin() {
        for frame in p.frames() {
            for cond in Condition::ALL {
                let bare = render_frame(&p, frame.as_deref(), cond, Template::None).unwrap();
                for tpl in [Template::Control, Template::Etr] {
                    let wrapped = render_frame(&p, frame.as_deref(), cond, tpl).unwrap();
                    assert!(wrapped.ends_with(&bare), "{}", p.id);
                    assert!(wrapped.starts_with(tpl.prefix().unwrap()));
                }
            }
        }
    }
}

#[test]
fn parse_errors_carry_positions() {
    let err = parse_corpus("problem p\nkind: inference\npremise: (a & b\n").unwrap_err();
    assert_eq!(err.line, 3);
    assert!(err.column >= 10, "{err}");
    let err = parse_corpus("problem p\nkind: inference\nfoo: bar\n").unwrap_err();
    assert_eq!((err.line, err.column), (3, 1));
}
