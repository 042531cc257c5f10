//! Randomized checks of the semantic laws, relation invariants and model
//! file invariants, plus brute-force oracles for the algebra.

mod common;

use common::*;
use ptslogic::algebra::{Algebra, TruthValue};
use ptslogic::formula::Formula;
use ptslogic::model::{parse_model, to_json, validate, KripkeModel, StateId, ValuationMode};
use ptslogic::relations::{
    is_bisimulation, is_simulation, largest_bisimulation, largest_simulation, Mode, StateRelation,
};
use ptslogic::semantics::{eval, eval_all, Evaluator};
use ptslogic::twist::{RegionKind, WPair};
use rand::Rng;

fn same_everywhere(m: &KripkeModel, f: &Formula, g: &Formula) -> bool {
    let mut ev = Evaluator::new(m);
    ev.values(f).unwrap() == ev.values(g).unwrap()
}

#[test]
fn modal_dualities() {
    let mut r = rng(11);
    for alg in INSTANCES {
        for _ in 0..40 {
            let m = random_model(&mut r, alg, 6);
            let f = random_formula(&mut r, 3);
            let pairs = [
                (f.clone().neg().boxed(), f.clone().diamond().neg()),
                (f.clone().neg().diamond(), f.clone().boxed().neg()),
                (f.clone().neg().neg_box(), f.clone().neg_diamond().neg()),
                (f.clone().neg().neg_diamond(), f.clone().neg_box().neg()),
            ];
            for (a, b) in &pairs {
                assert!(same_everywhere(&m, a, b), "{a} vs {b} on {alg}");
            }
        }
    }
}

#[test]
fn strong_negation_de_morgan() {
    let mut r = rng(12);
    for alg in INSTANCES {
        for _ in 0..40 {
            let m = random_model(&mut r, alg, 6);
            let (f, g) = (random_formula(&mut r, 3), random_formula(&mut r, 3));
            let lhs = f.clone().and(g.clone()).strong_neg();
            let rhs = f.clone().strong_neg().or(g.clone().strong_neg());
            assert!(same_everywhere(&m, &lhs, &rhs), "{lhs} vs {rhs}");
            let lhs = f.clone().or(g.clone()).strong_neg();
            let rhs = f.strong_neg().and(g.strong_neg());
            assert!(same_everywhere(&m, &lhs, &rhs), "{lhs} vs {rhs}");
        }
    }
}

/// `¬φ` against `∼φ`: below it when the positive part is 0, above otherwise.
fn negations_ordered(m: &KripkeModel, f: &Formula) -> bool {
    let values = eval_all(m, f).unwrap();
    let para = eval_all(m, &f.clone().neg()).unwrap();
    let strong = eval_all(m, &f.clone().strong_neg()).unwrap();
    values
        .iter()
        .zip(para.iter().zip(&strong))
        .all(|(v, (n, s))| {
            if v.pos().is_bottom() {
                n.leq(s).unwrap()
            } else {
                s.leq(n).unwrap()
            }
        })
}

#[test]
fn paraconsistent_and_strong_negation_ordering() {
    let mut r = rng(13);
    for alg in [Algebra::Bool2, Algebra::Chain3, Algebra::Godel] {
        for _ in 0..60 {
            let m = random_model(&mut r, alg, 6);
            let f = random_formula(&mut r, 3);
            assert!(negations_ordered(&m, &f), "{f} on {alg}");
        }
    }
}

#[test]
fn negation_ordering_on_longer_chains() {
    let mut r = rng(14);
    for n in [4, 5, 7] {
        for _ in 0..30 {
            let m = random_model(&mut r, Algebra::Chain(n), 5);
            assert!(negations_ordered(&m, &random_formula(&mut r, 3)));
        }
    }
}

#[test]
fn negation_laws() {
    let mut r = rng(15);
    for alg in INSTANCES {
        let top = Formula::top();
        for _ in 0..30 {
            let m = random_model(&mut r, alg, 6);
            let f = random_formula(&mut r, 4);
            assert!(same_everywhere(&m, &f.clone().neg().neg(), &f));
            assert!(same_everywhere(&m, &top.clone().neg(), &Formula::Bottom));
            assert!(same_everywhere(&m, &Formula::Bottom.neg(), &top));
            let values = eval_all(&m, &f).unwrap();
            let contradiction = eval_all(&m, &f.clone().and(f.clone().neg())).unwrap();
            for (v, c) in values.iter().zip(&contradiction) {
                let expected = WPair::new(
                    v.pos().meet(&v.neg()).unwrap(),
                    v.neg().join(&v.pos()).unwrap(),
                )
                .unwrap();
                assert_eq!(*c, expected);
            }
        }
    }
}

#[test]
fn diamond_is_monotone() {
    // raising every valuation can only raise fragment formulas at the same state
    let mut r = rng(16);
    for alg in INSTANCES {
        for _ in 0..30 {
            let m = random_model(&mut r, alg, 5);
            let mut b = KripkeModel::builder(alg).states(m.pts().states().to_vec());
            for t in m.pts().transitions() {
                b = b.transition(
                    m.pts().state_name(t.from),
                    m.pts().state_name(t.to),
                    t.weight,
                );
            }
            for p in m.props() {
                b = b.prop(p.clone());
                for w in m.pts().states() {
                    b = b.value(p.clone(), w.clone(), raise(&mut r, m.value(p, w).unwrap()));
                }
            }
            let higher = b.build(ValuationMode::Strict).unwrap();
            let f = random_fragment_formula(&mut r, 4);
            let (lo, hi) = (eval_all(&m, &f).unwrap(), eval_all(&higher, &f).unwrap());
            assert!(lo.iter().zip(&hi).all(|(a, b)| a.leq(b).unwrap()), "{f}");
        }
    }
}

#[test]
fn fragment_preserved_along_largest_simulation() {
    let mut r = rng(17);
    for alg in INSTANCES {
        for _ in 0..25 {
            let (m1, m2) = random_model_pair(&mut r, alg, 5);
            let s = largest_simulation(&m1, &m2, Mode::WithValuations).unwrap();
            for _ in 0..10 {
                let f = random_fragment_formula(&mut r, 4);
                let (a, b) = (eval_all(&m1, &f).unwrap(), eval_all(&m2, &f).unwrap());
                for (w, v) in s.iter() {
                    assert!(a[w.0].leq(&b[v.0]).unwrap(), "{f} at {w:?},{v:?}");
                }
            }
        }
    }
}

/// One-state models with no transitions: `p` is (1,1) on the left and
/// (1,0) on the right, so the single pair is a simulation.
fn negation_witness() -> (KripkeModel, KripkeModel) {
    let one = |pos: &str, neg: &str| {
        parse_model(
            &format!(r#"{{"algebra": "bool2", "states": ["s"], "props": ["p"], "valuation": {{"p": {{"s": ["{pos}", "{neg}"]}}}}}}"#),
            ValuationMode::Strict,
        )
        .unwrap()
    };
    (one("1", "1"), one("1", "0"))
}

#[test]
fn negation_is_not_preserved() {
    let (m1, m2) = negation_witness();
    let s = StateRelation::from_names([("s", "s")], &m1, &m2).unwrap();
    assert!(is_simulation(&s, &m1, &m2, Mode::WithValuations).unwrap());
    let f = Formula::prop("p").neg();
    let (a, b) = (
        eval(&m1, StateId(0), &f).unwrap(),
        eval(&m2, StateId(0), &f).unwrap(),
    );
    assert_eq!(
        (a.to_string(), b.to_string()),
        ("(1, 1)".into(), "(0, 1)".into())
    );
    assert!(!a.leq(&b).unwrap());
}

#[test]
fn box_is_not_preserved() {
    // a deadlock state simulated by a state with a crisp self-loop
    let m1 = parse_model(
        r#"{"algebra": "bool2", "states": ["s"], "props": ["p"], "valuation": {"p": {"s": ["0", "0"]}}}"#,
        ValuationMode::Strict,
    )
    .unwrap();
    let m2 = parse_model(
        r#"{"algebra": "bool2", "states": ["s"], "props": ["p"],
            "transitions": [{"from": "s", "to": "s", "pos": "1", "neg": "0"}],
            "valuation": {"p": {"s": ["0", "0"]}}}"#,
        ValuationMode::Strict,
    )
    .unwrap();
    assert!(largest_simulation(&m1, &m2, Mode::WithValuations)
        .unwrap()
        .contains(StateId(0), StateId(0)));
    let f = Formula::prop("p").boxed();
    let (a, b) = (
        eval(&m1, StateId(0), &f).unwrap(),
        eval(&m2, StateId(0), &f).unwrap(),
    );
    assert_eq!(
        (a.to_string(), b.to_string()),
        ("(1, 0)".into(), "(0, 0)".into())
    );
    assert!(!a.leq(&b).unwrap());
}

#[test]
fn random_search_finds_non_preserved_formulas() {
    let mut r = rng(18);
    let outside =
        ["!p", "p->q", "[]p", "[~]p", "<~>p"].map(|s| ptslogic::formula::parse_formula(s).unwrap());
    let mut found = [false; 5];
    for _ in 0..400 {
        let (m1, m2) = random_model_pair(&mut r, Algebra::Godel, 3);
        let s = largest_simulation(&m1, &m2, Mode::WithValuations).unwrap();
        for (i, f) in outside.iter().enumerate() {
            let (a, b) = (eval_all(&m1, f).unwrap(), eval_all(&m2, f).unwrap());
            found[i] |= s.iter().any(|(w, v)| !a[w.0].leq(&b[v.0]).unwrap());
        }
    }
    assert_eq!(found, [true; 5]);
}

#[test]
fn bisimilar_states_agree_on_everything() {
    let mut r = rng(19);
    for alg in INSTANCES {
        for _ in 0..20 {
            let m = random_model(&mut r, alg, 6);
            let copy = m.rename_states(|s| format!("{s}'"));
            for other in [&m, &copy] {
                let b = largest_bisimulation(&m, other, Mode::WithValuations).unwrap();
                assert!(StateRelation::identity(&m).is_subset(&b));
                for _ in 0..10 {
                    let f = random_formula(&mut r, 4);
                    let (x, y) = (eval_all(&m, &f).unwrap(), eval_all(other, &f).unwrap());
                    for (w, v) in b.iter() {
                        assert_eq!(x[w.0], y[v.0], "{f}");
                    }
                }
            }
        }
    }
}

#[test]
fn largest_simulation_contains_every_simulation() {
    let mut r = rng(20);
    for alg in INSTANCES {
        for _ in 0..30 {
            let (m1, m2) = random_model_pair(&mut r, alg, 4);
            for mode in [Mode::Frames, Mode::WithValuations] {
                let largest = largest_simulation(&m1, &m2, mode).unwrap();
                assert!(is_simulation(&largest, &m1, &m2, mode).unwrap());
                for _ in 0..20 {
                    let candidate: StateRelation = m1
                        .pts()
                        .state_ids()
                        .flat_map(|w| m2.pts().state_ids().map(move |v| (w, v)))
                        .filter(|_| r.gen_bool(0.3))
                        .collect();
                    if is_simulation(&candidate, &m1, &m2, mode).unwrap() {
                        assert!(candidate.is_subset(&largest));
                    }
                }
            }
        }
    }
}

#[test]
fn bisimilarity_is_an_equivalence() {
    let mut r = rng(21);
    for alg in INSTANCES {
        for _ in 0..30 {
            let m = random_model(&mut r, alg, 6);
            let b = largest_bisimulation(&m, &m, Mode::WithValuations).unwrap();
            assert!(is_bisimulation(&b, &m, &m, Mode::WithValuations).unwrap());
            assert!(StateRelation::identity(&m).is_subset(&b));
            assert_eq!(b.converse(), b);
            for (x, y) in b.iter() {
                for (y2, z) in b.iter() {
                    if y == y2 {
                        assert!(b.contains(x, z));
                    }
                }
            }
        }
    }
}

#[test]
fn model_files_roundtrip() {
    let mut r = rng(22);
    for alg in INSTANCES {
        for _ in 0..30 {
            let m = random_model(&mut r, alg, 6);
            assert!(validate(&m).is_empty());
            let again = parse_model(&to_json(&m), ValuationMode::Strict).unwrap();
            assert_eq!(again, m);
            let pts = m.pts();
            for w in pts.state_ids() {
                for v in pts.state_ids() {
                    let stored = pts.weight(w, v).unwrap_or_else(|| WPair::unknown(alg));
                    assert_eq!(
                        (pts.r_plus(w, v), pts.r_minus(w, v)),
                        (stored.pos(), stored.neg())
                    );
                }
            }
        }
    }
}

#[test]
fn residuum_is_the_largest_admissible_value() {
    for alg in [
        Algebra::Bool2,
        Algebra::Chain3,
        Algebra::Chain(6),
        Algebra::Godel,
    ] {
        let c = alg.sample(9);
        for a in &c {
            for b in &c {
                let oracle = c
                    .iter()
                    .filter(|x| a.meet(x).unwrap().leq(b).unwrap())
                    .max_by(|x, y| x.try_cmp(y).unwrap())
                    .unwrap();
                assert_eq!(a.residuum(b).unwrap(), *oracle, "{a} ⇀ {b} on {alg}");
            }
        }
    }
}

#[test]
fn godel_regions_follow_the_sum_threshold() {
    let grid = Algebra::Godel.sample(12);
    for a in &grid {
        for b in &grid {
            let (TruthValue::Unit(x), TruthValue::Unit(y)) = (a, b) else {
                unreachable!()
            };
            let sum = x.ratio() + y.ratio();
            let one = num_rational::Ratio::from_integer(1);
            let expected = match sum.cmp(&one) {
                std::cmp::Ordering::Greater => RegionKind::Inconsistent,
                std::cmp::Ordering::Equal => RegionKind::Strict,
                std::cmp::Ordering::Less => RegionKind::Vague,
            };
            assert_eq!(
                WPair::new(*a, *b).unwrap().region().kind(),
                expected,
                "({a}, {b})"
            );
        }
    }
}

#[test]
fn chain_regions_follow_the_rank_sum() {
    for n in [3, 4, 5, 8] {
        let alg = Algebra::chain(n).unwrap();
        let elems = alg.elements().unwrap();
        for (i, a) in elems.iter().enumerate() {
            for (j, b) in elems.iter().enumerate() {
                // distance to (top, top) against distance to (bot, bot), by rank
                let top = n as i64 - 1;
                let (i, j) = (i as i64, j as i64);
                let to_both = (top - i).pow(2) + (top - j).pow(2);
                let to_neither = i * i + j * j;
                let region = WPair::new(*a, *b).unwrap().region();
                assert_eq!(region.in_delta_p, to_both <= to_neither);
                assert_eq!(region.in_delta_c, to_neither <= to_both);
            }
        }
    }
}
