//! Paraconsistent transition systems and Kripke models.
//!
//! A [`Pts`] is a finite, nonempty set of states with at most one
//! pair-weighted transition per ordered state pair. A [`KripkeModel`] adds a
//! valuation of propositions to weight pairs. States, propositions and
//! transitions keep their declaration order, so every iteration over a model
//! is deterministic.

mod file;

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::algebra::{Algebra, AlgebraError, LiteralError, TruthValue};
use crate::twist::WPair;

pub use file::{parse_model, to_json};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StateId(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PropId(pub usize);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("malformed model file: {0}")]
    Syntax(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Literal(#[from] LiteralError),
    #[error("weight {value} is not an element of {algebra}")]
    NotInCarrier { value: TruthValue, algebra: Algebra },
    #[error("a model needs at least one state")]
    NoStates,
    #[error("duplicate state {0}")]
    DuplicateState(String),
    #[error("duplicate proposition {0}")]
    DuplicateProp(String),
    #[error("duplicate transition {from}→{to}")]
    DuplicateTransition { from: String, to: String },
    #[error("duplicate valuation for {prop} at {state}")]
    DuplicateValuation { prop: String, state: String },
    #[error("unknown state {0}")]
    UnknownState(String),
    #[error("undeclared proposition {0}")]
    UnknownProp(String),
    #[error("no valuation for {prop} at {state} (strict mode)")]
    MissingValuation { prop: String, state: String },
}

/// A model error together with where it was found (e.g. `transitions[1]`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub location: String,
    pub error: ModelError,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.location, self.error)
    }
}

/// Every problem found while building or validating a model.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct Diagnostics(pub Vec<Diagnostic>);

impl fmt::Display for Diagnostics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, d) in self.0.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

/// Whether a missing valuation entry means "no information" or is an error.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ValuationMode {
    /// Missing entries read as `(0, 0)`.
    #[default]
    Lenient,
    /// The valuation must be total on props × states.
    Strict,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Transition {
    pub from: StateId,
    pub to: StateId,
    pub weight: WPair,
}

/// A paraconsistent transition system over one algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pts {
    algebra: Algebra,
    states: Vec<String>,
    state_index: HashMap<String, StateId>,
    transitions: Vec<Transition>,
    edge_index: HashMap<(StateId, StateId), usize>,
    outgoing: Vec<Vec<usize>>,
}

impl Pts {
    pub fn algebra(&self) -> Algebra {
        self.algebra
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn state_ids(&self) -> impl Iterator<Item = StateId> {
        (0..self.states.len()).map(StateId)
    }

    pub fn state_count(&self) -> usize {
        self.states.len()
    }

    pub fn state_id(&self, name: &str) -> Result<StateId, ModelError> {
        self.state_index
            .get(name)
            .copied()
            .ok_or_else(|| ModelError::UnknownState(name.to_string()))
    }

    pub fn state_name(&self, id: StateId) -> &str {
        &self.states[id.0]
    }

    /// All transitions in declaration order.
    pub fn transitions(&self) -> &[Transition] {
        &self.transitions
    }

    pub fn weight(&self, from: StateId, to: StateId) -> Option<WPair> {
        self.edge_index
            .get(&(from, to))
            .map(|&i| self.transitions[i].weight)
    }

    /// Positive accessibility: the transition's first component, or 0.
    pub fn r_plus(&self, from: StateId, to: StateId) -> TruthValue {
        self.weight(from, to)
            .map_or_else(|| self.algebra.bottom(), |w| w.pos())
    }

    /// Negative accessibility: the transition's second component, or 0.
    pub fn r_minus(&self, from: StateId, to: StateId) -> TruthValue {
        self.weight(from, to)
            .map_or_else(|| self.algebra.bottom(), |w| w.neg())
    }

    /// Outgoing transitions of `w` in declaration order.
    pub fn outgoing(&self, w: StateId) -> impl Iterator<Item = &Transition> + '_ {
        self.outgoing[w.0]
            .iter()
            .map(move |&i| &self.transitions[i])
    }

    /// Targets of the outgoing transitions of `w`, in declaration order.
    pub fn successors(&self, w: StateId) -> Vec<StateId> {
        self.outgoing(w).map(|t| t.to).collect()
    }
}

/// A Kripke model: a PTS plus a valuation `Prop × W → A × A`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KripkeModel {
    pts: Pts,
    props: Vec<String>,
    prop_index: HashMap<String, PropId>,
    valuation: HashMap<(PropId, StateId), WPair>,
    mode: ValuationMode,
}

impl KripkeModel {
    pub fn builder(algebra: Algebra) -> ModelBuilder {
        ModelBuilder::new(algebra)
    }

    pub fn pts(&self) -> &Pts {
        &self.pts
    }

    pub fn algebra(&self) -> Algebra {
        self.pts.algebra
    }

    pub fn mode(&self) -> ValuationMode {
        self.mode
    }

    pub fn props(&self) -> &[String] {
        &self.props
    }

    pub fn prop_id(&self, name: &str) -> Result<PropId, ModelError> {
        self.prop_index
            .get(name)
            .copied()
            .ok_or_else(|| ModelError::UnknownProp(name.to_string()))
    }

    /// Explicitly stored valuation entry, if any.
    pub fn stored_value(&self, p: PropId, w: StateId) -> Option<WPair> {
        self.valuation.get(&(p, w)).copied()
    }

    /// `V(p, w)`; missing entries default to `(0, 0)` in lenient mode.
    pub fn valuation_of(&self, p: PropId, w: StateId) -> Result<WPair, ModelError> {
        match (self.stored_value(p, w), self.mode) {
            (Some(v), _) => Ok(v),
            (None, ValuationMode::Lenient) => Ok(WPair::unknown(self.algebra())),
            (None, ValuationMode::Strict) => Err(ModelError::MissingValuation {
                prop: self.props[p.0].clone(),
                state: self.pts.states[w.0].clone(),
            }),
        }
    }

    /// `V(p, w)` by name.
    pub fn value(&self, prop: &str, state: &str) -> Result<WPair, ModelError> {
        self.valuation_of(self.prop_id(prop)?, self.pts.state_id(state)?)
    }

    /// Same model with every state renamed through `rename`.
    pub fn rename_states(&self, rename: impl Fn(&str) -> String) -> KripkeModel {
        let mut out = self.clone();
        out.pts.states = self.pts.states.iter().map(|s| rename(s)).collect();
        out.pts.state_index = out
            .pts
            .states
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), StateId(i)))
            .collect();
        out
    }

    /// Same model with the requested valuation mode, validated.
    pub fn with_mode(&self, mode: ValuationMode) -> Result<KripkeModel, Diagnostics> {
        let out = KripkeModel {
            mode,
            ..self.clone()
        };
        let problems = validate(&out);
        if problems.is_empty() {
            Ok(out)
        } else {
            Err(Diagnostics(problems))
        }
    }
}

/// Re-checks every model invariant and returns all violations.
pub fn validate(model: &KripkeModel) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    let pts = &model.pts;
    let alg = pts.algebra;
    let mut push = |location: String, error: ModelError| out.push(Diagnostic { location, error });

    if pts.states.is_empty() {
        push("states".into(), ModelError::NoStates);
    }
    let mut seen = HashMap::new();
    for (i, s) in pts.states.iter().enumerate() {
        if seen.insert(s.as_str(), i).is_some() {
            push(
                format!("states[{i}]"),
                ModelError::DuplicateState(s.clone()),
            );
        }
    }
    let mut seen_props = HashMap::new();
    for (i, p) in model.props.iter().enumerate() {
        if seen_props.insert(p.as_str(), i).is_some() {
            push(format!("props[{i}]"), ModelError::DuplicateProp(p.clone()));
        }
    }
    let mut seen_edges = HashMap::new();
    for (i, t) in pts.transitions.iter().enumerate() {
        let location = format!("transitions[{i}]");
        if t.from.0 >= pts.states.len() || t.to.0 >= pts.states.len() {
            push(
                location,
                ModelError::UnknownState(format!("#{}", t.from.0.max(t.to.0))),
            );
            continue;
        }
        if seen_edges.insert((t.from, t.to), i).is_some() {
            push(
                location.clone(),
                ModelError::DuplicateTransition {
                    from: pts.states[t.from.0].clone(),
                    to: pts.states[t.to.0].clone(),
                },
            );
        }
        for value in [t.weight.pos(), t.weight.neg()] {
            if !alg.contains(&value) {
                push(
                    location.clone(),
                    ModelError::NotInCarrier {
                        value,
                        algebra: alg,
                    },
                );
            }
        }
    }
    for (&(p, w), v) in &model.valuation {
        let location = format!(
            "valuation.{}.{}",
            model.props.get(p.0).map_or("?", String::as_str),
            pts.states.get(w.0).map_or("?", String::as_str)
        );
        for value in [v.pos(), v.neg()] {
            if !alg.contains(&value) {
                push(
                    location.clone(),
                    ModelError::NotInCarrier {
                        value,
                        algebra: alg,
                    },
                );
            }
        }
    }
    if model.mode == ValuationMode::Strict {
        for (pi, p) in model.props.iter().enumerate() {
            for (wi, w) in pts.states.iter().enumerate() {
                if !model.valuation.contains_key(&(PropId(pi), StateId(wi))) {
                    push(
                        format!("valuation.{p}.{w}"),
                        ModelError::MissingValuation {
                            prop: p.clone(),
                            state: w.clone(),
                        },
                    );
                }
            }
        }
    }
    out
}

/// Collects a model by name and reports every problem at once on `build`.
#[derive(Debug, Clone)]
pub struct ModelBuilder {
    algebra: Algebra,
    states: Vec<String>,
    props: Vec<String>,
    transitions: Vec<(String, String, WPair)>,
    valuation: Vec<(String, String, WPair, String)>,
    errors: Vec<Diagnostic>,
}

impl ModelBuilder {
    pub fn new(algebra: Algebra) -> Self {
        ModelBuilder {
            algebra,
            states: Vec::new(),
            props: Vec::new(),
            transitions: Vec::new(),
            valuation: Vec::new(),
            errors: Vec::new(),
        }
    }

    pub fn state(mut self, name: impl Into<String>) -> Self {
        self.states.push(name.into());
        self
    }

    pub fn states<S: Into<String>>(mut self, names: impl IntoIterator<Item = S>) -> Self {
        self.states.extend(names.into_iter().map(Into::into));
        self
    }

    pub fn prop(mut self, name: impl Into<String>) -> Self {
        self.props.push(name.into());
        self
    }

    pub fn transition(
        mut self,
        from: impl Into<String>,
        to: impl Into<String>,
        weight: WPair,
    ) -> Self {
        self.transitions.push((from.into(), to.into(), weight));
        self
    }

    pub fn value(
        mut self,
        prop: impl Into<String>,
        state: impl Into<String>,
        value: WPair,
    ) -> Self {
        let (prop, state) = (prop.into(), state.into());
        let location = format!("valuation.{prop}.{state}");
        self.valuation.push((prop, state, value, location));
        self
    }

    /// Records an error found before the builder saw the item (e.g. a bad
    /// literal in a file); `build` will fail with it.
    pub fn error(mut self, location: impl Into<String>, error: ModelError) -> Self {
        self.errors.push(Diagnostic {
            location: location.into(),
            error,
        });
        self
    }

    pub fn build(self, mode: ValuationMode) -> Result<KripkeModel, Diagnostics> {
        let ModelBuilder {
            algebra,
            states,
            props,
            transitions,
            valuation,
            mut errors,
        } = self;
        let mut diag =
            |location: String, error: ModelError| errors.push(Diagnostic { location, error });
        if let Algebra::Chain(n) = algebra {
            if let Err(e) = Algebra::chain(n) {
                diag("algebra".into(), e.into());
            }
        }

        let mut state_index = HashMap::new();
        let mut state_names = Vec::new();
        for (i, s) in states.into_iter().enumerate() {
            if state_index.contains_key(&s) {
                diag(format!("states[{i}]"), ModelError::DuplicateState(s));
            } else {
                state_index.insert(s.clone(), StateId(state_names.len()));
                state_names.push(s);
            }
        }
        if state_names.is_empty() {
            diag("states".into(), ModelError::NoStates);
        }

        let mut prop_index = HashMap::new();
        let mut prop_names = Vec::new();
        for (i, p) in props.into_iter().enumerate() {
            if prop_index.contains_key(&p) {
                diag(format!("props[{i}]"), ModelError::DuplicateProp(p));
            } else {
                prop_index.insert(p.clone(), PropId(prop_names.len()));
                prop_names.push(p);
            }
        }

        let check_pair = |location: &str, w: &WPair, diag: &mut dyn FnMut(String, ModelError)| {
            let mut ok = true;
            for value in [w.pos(), w.neg()] {
                if !algebra.contains(&value) {
                    diag(
                        location.to_string(),
                        ModelError::NotInCarrier { value, algebra },
                    );
                    ok = false;
                }
            }
            ok
        };

        let mut edges = Vec::new();
        let mut edge_index = HashMap::new();
        let mut outgoing = vec![Vec::new(); state_names.len()];
        for (i, (from, to, weight)) in transitions.into_iter().enumerate() {
            let location = format!("transitions[{i}]");
            let src = state_index.get(&from).copied();
            let dst = state_index.get(&to).copied();
            for (name, id) in [(&from, src), (&to, dst)] {
                if id.is_none() {
                    diag(location.clone(), ModelError::UnknownState(name.clone()));
                }
            }
            let weight_ok = check_pair(&location, &weight, &mut diag);
            let (Some(src), Some(dst)) = (src, dst) else {
                continue;
            };
            if edge_index.contains_key(&(src, dst)) {
                diag(location, ModelError::DuplicateTransition { from, to });
                continue;
            }
            if weight_ok {
                edge_index.insert((src, dst), edges.len());
                outgoing[src.0].push(edges.len());
                edges.push(Transition {
                    from: src,
                    to: dst,
                    weight,
                });
            }
        }

        let mut values = HashMap::new();
        for (prop, state, value, location) in valuation {
            let p = prop_index.get(&prop).copied();
            let w = state_index.get(&state).copied();
            if p.is_none() {
                diag(location.clone(), ModelError::UnknownProp(prop.clone()));
            }
            if w.is_none() {
                diag(location.clone(), ModelError::UnknownState(state.clone()));
            }
            let ok = check_pair(&location, &value, &mut diag);
            let (Some(p), Some(w)) = (p, w) else { continue };
            if values.contains_key(&(p, w)) {
                diag(location, ModelError::DuplicateValuation { prop, state });
            } else if ok {
                values.insert((p, w), value);
            }
        }

        let model = KripkeModel {
            pts: Pts {
                algebra,
                states: state_names,
                state_index,
                transitions: edges,
                edge_index,
                outgoing,
            },
            props: prop_names,
            prop_index,
            valuation: values,
            mode,
        };
        if mode == ValuationMode::Strict {
            errors.extend(
                validate(&model)
                    .into_iter()
                    .filter(|d| matches!(d.error, ModelError::MissingValuation { .. })),
            );
        }
        if errors.is_empty() {
            Ok(model)
        } else {
            Err(Diagnostics(errors))
        }
    }

    /// Builds a frame (no propositions).
    pub fn build_frame(self) -> Result<Pts, Diagnostics> {
        self.build(ValuationMode::Lenient).map(|m| m.pts)
    }
}
