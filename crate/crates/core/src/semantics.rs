//! Satisfaction: every formula evaluates to a weight pair at every state.
//!
//! The modal operators are built from four auxiliary operators over the
//! successors `R[w]` of a state:
//!
//! * `⊞(w, φ*) = ⊓ (R⁺(w,w') ⇀ φ*(w'))` and `⊟` likewise over `R⁻`,
//! * `◇⁺(w, φ*) = ⊔ (R⁺(w,w') ⊓ φ*(w'))` and `◇⁻` likewise over `R⁻`,
//!
//! where `φ*` selects the positive or negative component of `φ`'s value.
//! A state without successors takes the empty meet (1) and the empty join (0).

use std::collections::HashMap;
use std::rc::Rc;

use thiserror::Error;

use crate::algebra::{AlgebraError, TruthValue};
use crate::formula::Formula;
use crate::model::{KripkeModel, ModelError, Pts, StateId};
use crate::twist::WPair;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Which component of the accessibility relation a modal operator reads.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Accessibility {
    Positive,
    Negative,
}

fn weight_of(pts: &Pts, w: StateId, to: StateId, rel: Accessibility) -> TruthValue {
    match rel {
        Accessibility::Positive => pts.r_plus(w, to),
        Accessibility::Negative => pts.r_minus(w, to),
    }
}

/// `⊓_{w' ∈ R[w]} (R(w,w') ⇀ values[w'])`
pub fn box_op(
    pts: &Pts,
    w: StateId,
    rel: Accessibility,
    values: &[TruthValue],
) -> Result<TruthValue, AlgebraError> {
    let terms = pts
        .successors(w)
        .into_iter()
        .map(|v| weight_of(pts, w, v, rel).residuum(&values[v.0]))
        .collect::<Result<Vec<_>, _>>()?;
    pts.algebra().big_meet(&terms)
}

/// `⊔_{w' ∈ R[w]} (R(w,w') ⊓ values[w'])`
pub fn diamond_op(
    pts: &Pts,
    w: StateId,
    rel: Accessibility,
    values: &[TruthValue],
) -> Result<TruthValue, AlgebraError> {
    let terms = pts
        .successors(w)
        .into_iter()
        .map(|v| weight_of(pts, w, v, rel).meet(&values[v.0]))
        .collect::<Result<Vec<_>, _>>()?;
    pts.algebra().big_join(&terms)
}

/// `⊞`
pub fn box_plus(pts: &Pts, w: StateId, values: &[TruthValue]) -> Result<TruthValue, AlgebraError> {
    box_op(pts, w, Accessibility::Positive, values)
}

/// `⊟`
pub fn box_minus(pts: &Pts, w: StateId, values: &[TruthValue]) -> Result<TruthValue, AlgebraError> {
    box_op(pts, w, Accessibility::Negative, values)
}

/// `◇⁺`
pub fn dia_plus(pts: &Pts, w: StateId, values: &[TruthValue]) -> Result<TruthValue, AlgebraError> {
    diamond_op(pts, w, Accessibility::Positive, values)
}

/// `◇⁻`
pub fn dia_minus(pts: &Pts, w: StateId, values: &[TruthValue]) -> Result<TruthValue, AlgebraError> {
    diamond_op(pts, w, Accessibility::Negative, values)
}

/// One of the four auxiliary operators.
type Auxiliary = fn(&Pts, StateId, &[TruthValue]) -> Result<TruthValue, AlgebraError>;

/// Evaluates formulas over one model, sharing results between structurally
/// equal subformulas.
pub struct Evaluator<'m, 'f> {
    model: &'m KripkeModel,
    cache: HashMap<&'f Formula, Rc<Vec<WPair>>>,
}

impl<'m, 'f> Evaluator<'m, 'f> {
    pub fn new(model: &'m KripkeModel) -> Self {
        Evaluator {
            model,
            cache: HashMap::new(),
        }
    }

    /// Value of `f` at every state, indexed by `StateId`.
    pub fn values(&mut self, f: &'f Formula) -> Result<Rc<Vec<WPair>>, EvalError> {
        if let Some(hit) = self.cache.get(f) {
            return Ok(Rc::clone(hit));
        }
        let computed = Rc::new(self.compute(f)?);
        self.cache.insert(f, Rc::clone(&computed));
        Ok(computed)
    }

    fn compute(&mut self, f: &'f Formula) -> Result<Vec<WPair>, EvalError> {
        let model = self.model;
        let pts = model.pts();
        let alg = model.algebra();
        let states: Vec<StateId> = pts.state_ids().collect();
        let pointwise =
            |a: &[WPair], b: &[WPair], op: fn(&WPair, &WPair) -> Result<WPair, AlgebraError>| {
                a.iter()
                    .zip(b)
                    .map(|(x, y)| op(x, y))
                    .collect::<Result<Vec<_>, _>>()
            };
        let modal = |inner: &[WPair],
                     pos: (Auxiliary, bool),
                     neg: (Auxiliary, bool)|
         -> Result<Vec<WPair>, EvalError> {
            let plus: Vec<TruthValue> = inner.iter().map(WPair::pos).collect();
            let minus: Vec<TruthValue> = inner.iter().map(WPair::neg).collect();
            let pick = |positive: bool| if positive { &plus } else { &minus };
            states
                .iter()
                .map(|&w| {
                    let a = (pos.0)(pts, w, pick(pos.1))?;
                    let b = (neg.0)(pts, w, pick(neg.1))?;
                    Ok(WPair::new(a, b)?)
                })
                .collect()
        };

        Ok(match f {
            Formula::Prop(name) => {
                let p = model.prop_id(name)?;
                states
                    .iter()
                    .map(|&w| model.valuation_of(p, w))
                    .collect::<Result<_, _>>()?
            }
            Formula::Bottom => vec![WPair::bottom(alg); states.len()],
            Formula::Neg(a) => self.values(a)?.iter().map(WPair::negate).collect(),
            Formula::And(a, b) => pointwise(&self.values(a)?, &self.values(b)?, WPair::meet)?,
            Formula::Or(a, b) => pointwise(&self.values(a)?, &self.values(b)?, WPair::join)?,
            Formula::Implies(a, b) => {
                pointwise(&self.values(a)?, &self.values(b)?, WPair::implies)?
            }
            // (⊞ φ⁺, ◇⁺ φ⁻)
            Formula::Box(a) => modal(&self.values(a)?, (box_plus, true), (dia_plus, false))?,
            // (◇⁺ φ⁺, ⊞ φ⁻)
            Formula::Diamond(a) => modal(&self.values(a)?, (dia_plus, true), (box_plus, false))?,
            // (◇⁻ φ⁻, ⊟ φ⁺)
            Formula::NegBox(a) => modal(&self.values(a)?, (dia_minus, false), (box_minus, true))?,
            // (⊟ φ⁻, ◇⁻ φ⁺)
            Formula::NegDiamond(a) => {
                modal(&self.values(a)?, (box_minus, false), (dia_minus, true))?
            }
            Formula::Consistency(a) => self
                .values(a)?
                .iter()
                .map(|v| {
                    if v.region().in_delta_c {
                        WPair::top(alg)
                    } else {
                        WPair::bottom(alg)
                    }
                })
                .collect(),
        })
    }
}

fn check_state(model: &KripkeModel, w: StateId) -> Result<(), EvalError> {
    if w.0 < model.pts().state_count() {
        Ok(())
    } else {
        Err(ModelError::UnknownState(format!("#{}", w.0)).into())
    }
}

/// `w ⊨ f` for every state, indexed by `StateId`.
pub fn eval_all(model: &KripkeModel, f: &Formula) -> Result<Vec<WPair>, EvalError> {
    let values = Evaluator::new(model).values(f)?;
    Ok(Rc::try_unwrap(values).unwrap_or_else(|rc| (*rc).clone()))
}

/// `w ⊨ f`
pub fn eval(model: &KripkeModel, w: StateId, f: &Formula) -> Result<WPair, EvalError> {
    check_state(model, w)?;
    Ok(eval_all(model, f)?[w.0])
}

/// `w ⊨ f` with the state given by name.
pub fn eval_at(model: &KripkeModel, state: &str, f: &Formula) -> Result<WPair, EvalError> {
    let w = model.pts().state_id(state)?;
    eval(model, w, f)
}

/// Valid: evaluates to `(1, 0)` at every state.
pub fn is_valid(model: &KripkeModel, f: &Formula) -> Result<bool, EvalError> {
    let top = WPair::top(model.algebra());
    Ok(eval_all(model, f)?.iter().all(|v| *v == top))
}

/// Equivalent on this model: equal values at every state.
pub fn equivalent(model: &KripkeModel, f: &Formula, g: &Formula) -> Result<bool, EvalError> {
    let mut ev = Evaluator::new(model);
    let a = ev.values(f)?;
    let b = ev.values(g)?;
    Ok(a == b)
}
