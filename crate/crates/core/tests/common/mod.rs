//! Seeded generators for random models, model pairs and formulas.
#![allow(dead_code)]

use ptslogic::algebra::{Algebra, TruthValue};
use ptslogic::formula::Formula;
use ptslogic::model::{KripkeModel, ValuationMode};
use ptslogic::twist::WPair;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const INSTANCES: [Algebra; 4] = [
    Algebra::Bool2,
    Algebra::Chain3,
    Algebra::Chain(5),
    Algebra::Godel,
];

pub const PROPS: [&str; 2] = ["p", "q"];

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Carrier values to draw from: the full carrier, or tenths and sixths for Gödel.
pub fn carrier(alg: Algebra) -> Vec<TruthValue> {
    alg.elements().unwrap_or_else(|| {
        let mut v: Vec<_> = (0..=10)
            .map(|k| TruthValue::godel(k, 10))
            .chain((0..=6).map(|k| TruthValue::godel(k, 6)))
            .collect();
        v.sort_by(|a, b| a.try_cmp(b).unwrap());
        v.dedup();
        v
    })
}

pub fn random_value(rng: &mut ChaCha8Rng, alg: Algebra) -> TruthValue {
    *carrier(alg).choose(rng).unwrap()
}

pub fn random_pair(rng: &mut ChaCha8Rng, alg: Algebra) -> WPair {
    WPair::new(random_value(rng, alg), random_value(rng, alg)).unwrap()
}

/// A pair `≽ w`: positive part raised, negative part lowered.
pub fn raise(rng: &mut ChaCha8Rng, w: WPair) -> WPair {
    let c = carrier(w.algebra());
    let up: Vec<_> = c
        .iter()
        .filter(|x| w.pos().leq(x).unwrap())
        .copied()
        .collect();
    let down: Vec<_> = c
        .iter()
        .filter(|x| x.leq(&w.neg()).unwrap())
        .copied()
        .collect();
    WPair::new(*up.choose(rng).unwrap(), *down.choose(rng).unwrap()).unwrap()
}

/// Up to `max_states` states `s0, s1, ...`, edges with probability 0.35
/// (self-loops allowed) and a total valuation over `PROPS`.
pub fn random_model(rng: &mut ChaCha8Rng, alg: Algebra, max_states: usize) -> KripkeModel {
    let n = rng.gen_range(1..=max_states);
    let names: Vec<String> = (0..n).map(|i| format!("s{i}")).collect();
    let mut b = KripkeModel::builder(alg).states(names.clone());
    for from in &names {
        for to in &names {
            if rng.gen_bool(0.35) {
                b = b.transition(from.clone(), to.clone(), random_pair(rng, alg));
            }
        }
    }
    for p in PROPS {
        b = b.prop(p);
        for s in &names {
            b = b.value(p, s.clone(), random_pair(rng, alg));
        }
    }
    b.build(ValuationMode::Strict).unwrap()
}

/// A copy of `m` with states `t0, t1, ...`, every weight and valuation
/// raised in the truth order, plus a few extra edges. The copy map is a
/// simulation from `m` to the result.
pub fn dominating_copy(rng: &mut ChaCha8Rng, m: &KripkeModel) -> KripkeModel {
    let alg = m.algebra();
    let pts = m.pts();
    let rename = |s: &str| format!("t{}", &s[1..]);
    let mut b = KripkeModel::builder(alg).states(pts.states().iter().map(|s| rename(s)));
    for from in pts.state_ids() {
        for to in pts.state_ids() {
            let weight = match pts.weight(from, to) {
                Some(w) => Some(raise(rng, w)),
                None if rng.gen_bool(0.15) => Some(random_pair(rng, alg)),
                None => None,
            };
            if let Some(w) = weight {
                b = b.transition(rename(pts.state_name(from)), rename(pts.state_name(to)), w);
            }
        }
    }
    for p in m.props() {
        b = b.prop(p.clone());
        for w in pts.state_ids() {
            let v = m.value(p, pts.state_name(w)).unwrap();
            b = b.value(p.clone(), rename(pts.state_name(w)), raise(rng, v));
        }
    }
    b.build(ValuationMode::Strict).unwrap()
}

/// Two models related by some simulation: half the time a dominating copy,
/// otherwise independent.
pub fn random_model_pair(
    rng: &mut ChaCha8Rng,
    alg: Algebra,
    max_states: usize,
) -> (KripkeModel, KripkeModel) {
    let m1 = random_model(rng, alg, max_states);
    let m2 = if rng.gen_bool(0.5) {
        dominating_copy(rng, &m1)
    } else {
        random_model(rng, alg, max_states)
    };
    (m1, m2)
}

fn leaf(rng: &mut ChaCha8Rng) -> Formula {
    match rng.gen_range(0..10) {
        0 => Formula::Bottom,
        1 => Formula::top(),
        _ => Formula::prop(*PROPS.choose(rng).unwrap()),
    }
}

/// A formula of modal and connective depth at most `depth` over every
/// connective.
pub fn random_formula(rng: &mut ChaCha8Rng, depth: usize) -> Formula {
    if depth == 0 || rng.gen_bool(0.2) {
        return leaf(rng);
    }
    let sub = |rng: &mut ChaCha8Rng| random_formula(rng, depth - 1);
    match rng.gen_range(0..10) {
        0 => sub(rng).neg(),
        1 => sub(rng).boxed(),
        2 => sub(rng).diamond(),
        3 => sub(rng).neg_box(),
        4 => sub(rng).neg_diamond(),
        5 => sub(rng).consistency(),
        6 => sub(rng).and(sub(rng)),
        7 => sub(rng).or(sub(rng)),
        8 => sub(rng).implies(sub(rng)),
        _ => sub(rng).strong_neg(),
    }
}

/// A formula built from `bot`, `top`, propositions, `&`, `|` and `<>` only.
pub fn random_fragment_formula(rng: &mut ChaCha8Rng, depth: usize) -> Formula {
    if depth == 0 || rng.gen_bool(0.2) {
        return leaf(rng);
    }
    let sub = |rng: &mut ChaCha8Rng| random_fragment_formula(rng, depth - 1);
    match rng.gen_range(0..3) {
        0 => sub(rng).diamond(),
        1 => sub(rng).and(sub(rng)),
        _ => sub(rng).or(sub(rng)),
    }
}
