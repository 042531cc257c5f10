//! Simulations and bisimulations between models, checked or computed.
//!
//! A simulation `S ⊆ W₁ × W₂` requires, for `(w, v) ∈ S`, that every step
//! `w →(a,b) w'` be answered by some `v →(a',b') v'` with `(a,b) ≼ (a',b')`
//! and `(w', v') ∈ S`. A bisimulation answers steps in both directions with
//! identical weights. With valuations, simulations also need
//! `V₁(w,p) ≼ V₂(v,p)` and bisimulations `V₁(w,p) = V₂(v,p)`.
//!
//! The largest relations are greatest fixpoints: start from every admissible
//! pair and delete violating pairs in lexicographic order until stable.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::model::{KripkeModel, ModelError, PropId, StateId, Transition};
use crate::twist::WPair;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RelationError {
    #[error("malformed relation file: {0}")]
    Syntax(String),
    #[error("unknown state {name} in the {side} model")]
    UnknownState { side: Side, name: String },
    #[error("models are over different algebras ({left} and {right})")]
    AlgebraMismatch { left: String, right: String },
    #[error("models declare different propositions ({left:?} and {right:?})")]
    PropMismatch {
        left: Vec<String>,
        right: Vec<String>,
    },
    #[error(transparent)]
    Model(#[from] ModelError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Left => "left",
            Side::Right => "right",
        })
    }
}

/// Whether the valuation conditions take part.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Mode {
    /// Transition structure only.
    Frames,
    #[default]
    WithValuations,
}

/// A set of cross-model state pairs, ordered lexicographically.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct StateRelation {
    pairs: BTreeSet<(StateId, StateId)>,
}

impl StateRelation {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn identity(model: &KripkeModel) -> Self {
        model.pts().state_ids().map(|w| (w, w)).collect()
    }

    pub fn insert(&mut self, w: StateId, v: StateId) -> bool {
        self.pairs.insert((w, v))
    }

    pub fn contains(&self, w: StateId, v: StateId) -> bool {
        self.pairs.contains(&(w, v))
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (StateId, StateId)> + '_ {
        self.pairs.iter().copied()
    }

    pub fn is_subset(&self, other: &StateRelation) -> bool {
        self.pairs.is_subset(&other.pairs)
    }

    /// `{(v, w) | (w, v) ∈ self}`
    pub fn converse(&self) -> StateRelation {
        self.iter().map(|(w, v)| (v, w)).collect()
    }

    /// Resolves `(left, right)` name pairs.
    pub fn from_names<L, R>(
        names: impl IntoIterator<Item = (L, R)>,
        m1: &KripkeModel,
        m2: &KripkeModel,
    ) -> Result<Self, RelationError>
    where
        L: AsRef<str>,
        R: AsRef<str>,
    {
        let resolve = |m: &KripkeModel, side: Side, name: &str| {
            m.pts()
                .state_id(name)
                .map_err(|_| RelationError::UnknownState {
                    side,
                    name: name.to_string(),
                })
        };
        names
            .into_iter()
            .map(|(l, r)| {
                Ok((
                    resolve(m1, Side::Left, l.as_ref())?,
                    resolve(m2, Side::Right, r.as_ref())?,
                ))
            })
            .collect()
    }

    pub fn to_names(&self, m1: &KripkeModel, m2: &KripkeModel) -> Vec<(String, String)> {
        self.iter()
            .map(|(w, v)| {
                (
                    m1.pts().state_name(w).to_string(),
                    m2.pts().state_name(v).to_string(),
                )
            })
            .collect()
    }

    /// Parses `[["w1", "v1"], ...]`.
    pub fn from_json(
        text: &str,
        m1: &KripkeModel,
        m2: &KripkeModel,
    ) -> Result<Self, RelationError> {
        let raw: Vec<[String; 2]> =
            serde_json::from_str(text).map_err(|e| RelationError::Syntax(e.to_string()))?;
        Self::from_names(raw.into_iter().map(|[l, r]| (l, r)), m1, m2)
    }

    /// `[["w1","v1"],...]` in lexicographic state order.
    pub fn to_json(&self, m1: &KripkeModel, m2: &KripkeModel) -> String {
        let raw: Vec<[String; 2]> = self
            .to_names(m1, m2)
            .into_iter()
            .map(|(l, r)| [l, r])
            .collect();
        serde_json::to_string(&raw).expect("relation serializes")
    }
}

impl FromIterator<(StateId, StateId)> for StateRelation {
    fn from_iter<I: IntoIterator<Item = (StateId, StateId)>>(iter: I) -> Self {
        StateRelation {
            pairs: iter.into_iter().collect(),
        }
    }
}

/// The first reason a relation is not a (bi)simulation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// A left step from the pair's left state has no matching right step.
    Forth {
        pair: (String, String),
        target: String,
        weight: WPair,
    },
    /// A right step from the pair's right state has no matching left step.
    Back {
        pair: (String, String),
        target: String,
        weight: WPair,
    },
    /// The valuation condition fails on `prop`.
    Valuation {
        pair: (String, String),
        prop: String,
        left: WPair,
        right: WPair,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Forth {
                pair: (w, v),
                target,
                weight,
            } => {
                write!(
                    f,
                    "({w}, {v}): step {w}→{target} {weight} has no matching step from {v}"
                )
            }
            Violation::Back {
                pair: (w, v),
                target,
                weight,
            } => {
                write!(
                    f,
                    "({w}, {v}): step {v}→{target} {weight} has no matching step from {w}"
                )
            }
            Violation::Valuation {
                pair: (w, v),
                prop,
                left,
                right,
            } => {
                write!(
                    f,
                    "({w}, {v}): {prop} is {left} on the left and {right} on the right"
                )
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Kind {
    Simulation,
    Bisimulation,
}

/// Two models with their props aligned by name.
struct Setting<'a> {
    m1: &'a KripkeModel,
    m2: &'a KripkeModel,
    /// `(name, id in m1, id in m2)`, empty in frame mode.
    props: Vec<(&'a str, PropId, PropId)>,
    kind: Kind,
}

impl<'a> Setting<'a> {
    fn new(
        m1: &'a KripkeModel,
        m2: &'a KripkeModel,
        mode: Mode,
        kind: Kind,
    ) -> Result<Self, RelationError> {
        if m1.algebra() != m2.algebra() {
            return Err(RelationError::AlgebraMismatch {
                left: m1.algebra().name(),
                right: m2.algebra().name(),
            });
        }
        let mut props = Vec::new();
        if mode == Mode::WithValuations {
            let left: BTreeSet<&String> = m1.props().iter().collect();
            let right: BTreeSet<&String> = m2.props().iter().collect();
            if left != right {
                return Err(RelationError::PropMismatch {
                    left: m1.props().to_vec(),
                    right: m2.props().to_vec(),
                });
            }
            for name in m1.props() {
                props.push((name.as_str(), m1.prop_id(name)?, m2.prop_id(name)?));
            }
        }
        Ok(Setting {
            m1,
            m2,
            props,
            kind,
        })
    }

    fn names(&self, w: StateId, v: StateId) -> (String, String) {
        (
            self.m1.pts().state_name(w).to_string(),
            self.m2.pts().state_name(v).to_string(),
        )
    }

    fn weights_match(&self, a: &WPair, b: &WPair) -> bool {
        match self.kind {
            // same algebra is checked on construction
            Kind::Simulation => a.leq(b).unwrap_or(false),
            Kind::Bisimulation => a == b,
        }
    }

    fn valuation_violation(
        &self,
        w: StateId,
        v: StateId,
    ) -> Result<Option<Violation>, RelationError> {
        for &(name, p1, p2) in &self.props {
            let left = self.m1.valuation_of(p1, w)?;
            let right = self.m2.valuation_of(p2, v)?;
            let ok = match self.kind {
                Kind::Simulation => left.leq(&right).unwrap_or(false),
                Kind::Bisimulation => left == right,
            };
            if !ok {
                return Ok(Some(Violation::Valuation {
                    pair: self.names(w, v),
                    prop: name.to_string(),
                    left,
                    right,
                }));
            }
        }
        Ok(None)
    }

    /// Step conditions of `(w, v)` against `rel`.
    fn step_violation(&self, rel: &StateRelation, w: StateId, v: StateId) -> Option<Violation> {
        let (t1, t2) = (self.m1.pts(), self.m2.pts());
        let unmatched = |step: &Transition, others: &[&Transition], forth: bool| {
            !others.iter().any(|other| {
                if forth {
                    rel.contains(step.to, other.to)
                        && self.weights_match(&step.weight, &other.weight)
                } else {
                    rel.contains(other.to, step.to)
                        && self.weights_match(&other.weight, &step.weight)
                }
            })
        };
        let (out1, out2): (Vec<_>, Vec<_>) = (t1.outgoing(w).collect(), t2.outgoing(v).collect());
        for step in &out1 {
            if unmatched(step, &out2, true) {
                return Some(Violation::Forth {
                    pair: self.names(w, v),
                    target: t1.state_name(step.to).to_string(),
                    weight: step.weight,
                });
            }
        }
        if self.kind == Kind::Bisimulation {
            for step in &out2 {
                if unmatched(step, &out1, false) {
                    return Some(Violation::Back {
                        pair: self.names(w, v),
                        target: t2.state_name(step.to).to_string(),
                        weight: step.weight,
                    });
                }
            }
        }
        None
    }

    fn check_ids(&self, rel: &StateRelation) -> Result<(), RelationError> {
        for (w, v) in rel.iter() {
            if w.0 >= self.m1.pts().state_count() {
                return Err(RelationError::UnknownState {
                    side: Side::Left,
                    name: format!("#{}", w.0),
                });
            }
            if v.0 >= self.m2.pts().state_count() {
                return Err(RelationError::UnknownState {
                    side: Side::Right,
                    name: format!("#{}", v.0),
                });
            }
        }
        Ok(())
    }

    fn check(&self, rel: &StateRelation) -> Result<Option<Violation>, RelationError> {
        self.check_ids(rel)?;
        for (w, v) in rel.iter() {
            if let Some(bad) = self.valuation_violation(w, v)? {
                return Ok(Some(bad));
            }
            if let Some(bad) = self.step_violation(rel, w, v) {
                return Ok(Some(bad));
            }
        }
        Ok(None)
    }

    /// Greatest fixpoint, with the number of passes over the relation.
    fn largest(&self) -> Result<(StateRelation, usize), RelationError> {
        let mut rel = StateRelation::new();
        for w in self.m1.pts().state_ids() {
            for v in self.m2.pts().state_ids() {
                if self.valuation_violation(w, v)?.is_none() {
                    rel.insert(w, v);
                }
            }
        }
        let mut passes = 0;
        loop {
            passes += 1;
            let snapshot: Vec<_> = rel.iter().collect();
            let mut changed = false;
            for (w, v) in snapshot {
                if self.step_violation(&rel, w, v).is_some() {
                    rel.pairs.remove(&(w, v));
                    changed = true;
                }
            }
            if !changed {
                return Ok((rel, passes));
            }
        }
    }
}

/// `None` when `rel` is a simulation from `m1` to `m2`, else the first
/// violation in lexicographic pair order.
pub fn check_simulation(
    rel: &StateRelation,
    m1: &KripkeModel,
    m2: &KripkeModel,
    mode: Mode,
) -> Result<Option<Violation>, RelationError> {
    Setting::new(m1, m2, mode, Kind::Simulation)?.check(rel)
}

pub fn is_simulation(
    rel: &StateRelation,
    m1: &KripkeModel,
    m2: &KripkeModel,
    mode: Mode,
) -> Result<bool, RelationError> {
    Ok(check_simulation(rel, m1, m2, mode)?.is_none())
}

/// `None` when `rel` is a bisimulation between `m1` and `m2`, else the first
/// violation in lexicographic pair order.
pub fn check_bisimulation(
    rel: &StateRelation,
    m1: &KripkeModel,
    m2: &KripkeModel,
    mode: Mode,
) -> Result<Option<Violation>, RelationError> {
    Setting::new(m1, m2, mode, Kind::Bisimulation)?.check(rel)
}

pub fn is_bisimulation(
    rel: &StateRelation,
    m1: &KripkeModel,
    m2: &KripkeModel,
    mode: Mode,
) -> Result<bool, RelationError> {
    Ok(check_bisimulation(rel, m1, m2, mode)?.is_none())
}

/// The union of all simulations from `m1` to `m2`; `w ≲ v` iff `(w, v)` is in it.
pub fn largest_simulation(
    m1: &KripkeModel,
    m2: &KripkeModel,
    mode: Mode,
) -> Result<StateRelation, RelationError> {
    Ok(Setting::new(m1, m2, mode, Kind::Simulation)?.largest()?.0)
}

/// The union of all bisimulations between `m1` and `m2`; `w ∼ v` iff `(w, v)` is in it.
pub fn largest_bisimulation(
    m1: &KripkeModel,
    m2: &KripkeModel,
    mode: Mode,
) -> Result<StateRelation, RelationError> {
    Ok(Setting::new(m1, m2, mode, Kind::Bisimulation)?.largest()?.0)
}
