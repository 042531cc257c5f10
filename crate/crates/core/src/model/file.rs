//! JSON model files.
//!
//! ```json
//! {"algebra": "godel",
//!  "states": ["w1", "w2"],
//!  "props": ["p"],
//!  "transitions": [{"from": "w1", "to": "w2", "pos": "0.4", "neg": "0.7"}],
//!  "valuation": {"p": {"w2": ["1", "0"]}}}
//! ```
//!
//! `algebra` is `"bool2"`, `"chain3"`, `{"chain": n}` or `"godel"`; weights
//! are literal strings for that algebra.

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use super::{Diagnostic, Diagnostics, KripkeModel, ModelError, PropId, ValuationMode};
use crate::algebra::Algebra;
use crate::twist::WPair;

#[derive(Debug, Serialize, Deserialize)]
#[serde(untagged)]
enum AlgebraSpec {
    Name(String),
    Chain { chain: u32 },
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TransitionEntry {
    from: String,
    to: String,
    pos: String,
    neg: String,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ModelFile {
    algebra: AlgebraSpec,
    states: Vec<String>,
    #[serde(default)]
    props: Vec<String>,
    #[serde(default)]
    transitions: Vec<TransitionEntry>,
    #[serde(default)]
    valuation: IndexMap<String, IndexMap<String, [String; 2]>>,
}

fn syntax(location: String, message: String) -> Diagnostics {
    Diagnostics(vec![Diagnostic {
        location,
        error: ModelError::Syntax(message),
    }])
}

/// Parses and validates a model file, reporting every violation found.
pub fn parse_model(text: &str, mode: ValuationMode) -> Result<KripkeModel, Diagnostics> {
    let file: ModelFile = serde_json::from_str(text).map_err(|e| {
        syntax(
            format!("line {}, column {}", e.line(), e.column()),
            e.to_string(),
        )
    })?;
    let algebra = match &file.algebra {
        AlgebraSpec::Name(name) => Algebra::from_name(name),
        AlgebraSpec::Chain { chain } => Algebra::chain(*chain),
    }
    .map_err(|e| {
        Diagnostics(vec![Diagnostic {
            location: "algebra".into(),
            error: e.into(),
        }])
    })?;

    let pair = |pos: &str, neg: &str| -> Result<WPair, ModelError> {
        Ok(WPair::new(
            algebra.parse_literal(pos)?,
            algebra.parse_literal(neg)?,
        )?)
    };

    let mut b = KripkeModel::builder(algebra).states(file.states);
    for p in file.props {
        b = b.prop(p);
    }
    for (i, t) in file.transitions.into_iter().enumerate() {
        match pair(&t.pos, &t.neg) {
            Ok(w) => b = b.transition(t.from, t.to, w),
            Err(e) => b = b.error(format!("transitions[{i}]"), e),
        }
    }
    for (prop, entries) in file.valuation {
        for (state, [pos, neg]) in entries {
            match pair(&pos, &neg) {
                Ok(w) => b = b.value(prop.clone(), state, w),
                Err(e) => b = b.error(format!("valuation.{prop}.{state}"), e),
            }
        }
    }
    b.build(mode)
}

/// Serializes to the normalized file form: declaration order, explicit
/// valuation entries only.
pub fn to_json(model: &KripkeModel) -> String {
    let pts = model.pts();
    let algebra = match pts.algebra() {
        Algebra::Chain(n) => AlgebraSpec::Chain { chain: n },
        other => AlgebraSpec::Name(other.name()),
    };
    let transitions = pts
        .transitions()
        .iter()
        .map(|t| TransitionEntry {
            from: pts.state_name(t.from).to_string(),
            to: pts.state_name(t.to).to_string(),
            pos: t.weight.pos().to_string(),
            neg: t.weight.neg().to_string(),
        })
        .collect();
    let mut valuation = IndexMap::new();
    for (pi, p) in model.props().iter().enumerate() {
        let entries: IndexMap<String, [String; 2]> = pts
            .state_ids()
            .filter_map(|w| {
                model.stored_value(PropId(pi), w).map(|v| {
                    (
                        pts.state_name(w).to_string(),
                        [v.pos().to_string(), v.neg().to_string()],
                    )
                })
            })
            .collect();
        if !entries.is_empty() {
            valuation.insert(p.clone(), entries);
        }
    }
    let file = ModelFile {
        algebra,
        states: pts.states().to_vec(),
        props: model.props().to_vec(),
        transitions,
        valuation,
    };
    serde_json::to_string_pretty(&file).expect("model file serializes")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::TruthValue;

    const EXAMPLE_LEFT: &str = r#"{
        "algebra": "godel",
        "states": ["w1", "w2", "w3", "w4", "w5"],
        "props": ["p"],
        "transitions": [
            {"from": "w1", "to": "w2", "pos": "0.4", "neg": "0.7"},
            {"from": "w1", "to": "w3", "pos": "0.3", "neg": "0.6"},
            {"from": "w2", "to": "w4", "pos": "0.2", "neg": "0.8"},
            {"from": "w3", "to": "w5", "pos": "0.2", "neg": "0.9"}
        ],
        "valuation": {"p": {"w2": ["1", "0"], "w3": ["0", "1"]}}
    }"#;

    #[test]
    fn parses_example_frame() {
        let m = parse_model(EXAMPLE_LEFT, ValuationMode::Lenient).unwrap();
        assert_eq!(m.pts().state_count(), 5);
        assert_eq!(m.pts().transitions().len(), 4);
        assert_eq!(m.value("p", "w2").unwrap(), WPair::godel((1, 1), (0, 1)));
        assert_eq!(m.value("p", "w1").unwrap(), WPair::godel((0, 1), (0, 1)));
    }

    #[test]
    fn duplicate_transition() {
        let text = r#"{"algebra": "godel", "states": ["w1", "w2"],
            "transitions": [{"from": "w1", "to": "w2", "pos": "0.4", "neg": "0.7"},
                            {"from": "w1", "to": "w2", "pos": "0.1", "neg": "0.1"}]}"#;
        let err = parse_model(text, ValuationMode::Lenient).unwrap_err();
        assert_eq!(
            err.to_string(),
            "transitions[1]: duplicate transition w1→w2"
        );
    }

    #[test]
    fn out_of_carrier_weight() {
        let text = r#"{"algebra": "godel", "states": ["w1"],
            "transitions": [{"from": "w1", "to": "w1", "pos": "1.2", "neg": "0"}]}"#;
        let err = parse_model(text, ValuationMode::Lenient).unwrap_err();
        assert!(matches!(err.0[0].error, ModelError::Literal(_)), "{err}");
        assert_eq!(err.0[0].location, "transitions[0]");
    }

    #[test]
    fn chain_algebra_and_syntax_errors() {
        let m = parse_model(
            r#"{"algebra": {"chain": 4}, "states": ["a"], "props": ["p"], "valuation": {"p": {"a": ["3", "0"]}}}"#,
            ValuationMode::Strict,
        )
        .unwrap();
        assert_eq!(
            m.value("p", "a").unwrap().pos(),
            TruthValue::ChainN { rank: 3, size: 4 }
        );

        let err = parse_model(
            r#"{"algebra": "godel", "states": ["a"],"#,
            ValuationMode::Lenient,
        )
        .unwrap_err();
        assert!(err.0[0].location.starts_with("line 1"));
        let err = parse_model(
            r#"{"algebra": "fuzzy", "states": ["a"]}"#,
            ValuationMode::Lenient,
        )
        .unwrap_err();
        assert_eq!(err.0[0].location, "algebra");
        let err = parse_model(
            r#"{"algebra": {"chain": 1}, "states": ["a"]}"#,
            ValuationMode::Lenient,
        )
        .unwrap_err();
        assert_eq!(err.0[0].location, "algebra");
    }

    #[test]
    fn undeclared_prop_in_valuation() {
        let err = parse_model(
            r#"{"algebra": "bool2", "states": ["a"], "props": [], "valuation": {"p": {"a": ["1", "0"]}}}"#,
            ValuationMode::Lenient,
        )
        .unwrap_err();
        assert_eq!(err.0[0].error, ModelError::UnknownProp("p".into()));
    }

    #[test]
    fn serialize_roundtrip() {
        let m = parse_model(EXAMPLE_LEFT, ValuationMode::Lenient).unwrap();
        let text = to_json(&m);
        let again = parse_model(&text, ValuationMode::Lenient).unwrap();
        assert_eq!(again, m);
        assert_eq!(to_json(&again), text);
    }
}
