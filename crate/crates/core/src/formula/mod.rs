//! Formulas of the paraconsistent modal logic.
//!
//! Concrete syntax (ASCII), tightest binding first:
//!
//! | syntax          | meaning                                   |
//! |-----------------|-------------------------------------------|
//! | `p`, `bot`, `top` | proposition, falsum, `!bot`             |
//! | `!φ` `~φ` `[]φ` `<>φ` `[~]φ` `<~>φ` `@φ` | prefix operators, stack freely |
//! | `φ & ψ`         | conjunction, left-associative             |
//! | `φ \| ψ`        | disjunction, left-associative             |
//! | `φ -> ψ`        | implication, right-associative            |
//! | `φ <-> ψ`       | biconditional, left-associative, loosest  |
//!
//! `!` is paraconsistent negation and `~φ` is strong negation `φ -> bot`.
//! `[~]` and `<~>` are the box and diamond over the negative accessibility
//! relation, and `@` is the consistency operator. `top`, `~` and `<->` are
//! expanded while parsing and never appear in the tree.

mod parser;

use std::fmt;

pub use parser::{parse_formula, ParseError, ParseErrorKind};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    Prop(String),
    Bottom,
    Neg(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Box(Box<Formula>),
    Diamond(Box<Formula>),
    NegBox(Box<Formula>),
    NegDiamond(Box<Formula>),
    Consistency(Box<Formula>),
}

impl Formula {
    pub fn prop(name: impl Into<String>) -> Formula {
        Formula::Prop(name.into())
    }

    /// `top`, i.e. `!bot`.
    pub fn top() -> Formula {
        Formula::Neg(Box::new(Formula::Bottom))
    }

    pub fn neg(self) -> Formula {
        Formula::Neg(Box::new(self))
    }

    /// Strong negation `self -> bot`.
    pub fn strong_neg(self) -> Formula {
        Formula::Implies(Box::new(self), Box::new(Formula::Bottom))
    }

    pub fn and(self, rhs: Formula) -> Formula {
        Formula::And(Box::new(self), Box::new(rhs))
    }

    pub fn or(self, rhs: Formula) -> Formula {
        Formula::Or(Box::new(self), Box::new(rhs))
    }

    pub fn implies(self, rhs: Formula) -> Formula {
        Formula::Implies(Box::new(self), Box::new(rhs))
    }

    pub fn iff(self, rhs: Formula) -> Formula {
        self.clone().implies(rhs.clone()).and(rhs.implies(self))
    }

    pub fn boxed(self) -> Formula {
        Formula::Box(Box::new(self))
    }

    pub fn diamond(self) -> Formula {
        Formula::Diamond(Box::new(self))
    }

    pub fn neg_box(self) -> Formula {
        Formula::NegBox(Box::new(self))
    }

    pub fn neg_diamond(self) -> Formula {
        Formula::NegDiamond(Box::new(self))
    }

    pub fn consistency(self) -> Formula {
        Formula::Consistency(Box::new(self))
    }

    /// Proposition names in first-occurrence order.
    pub fn props(&self) -> Vec<&str> {
        let mut out = Vec::new();
        self.visit(&mut |f| {
            if let Formula::Prop(p) = f {
                if !out.contains(&p.as_str()) {
                    out.push(p.as_str());
                }
            }
        });
        out
    }

    fn visit<'a>(&'a self, f: &mut impl FnMut(&'a Formula)) {
        f(self);
        match self {
            Formula::Prop(_) | Formula::Bottom => {}
            Formula::Neg(a)
            | Formula::Box(a)
            | Formula::Diamond(a)
            | Formula::NegBox(a)
            | Formula::NegDiamond(a)
            | Formula::Consistency(a) => a.visit(f),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.visit(f);
                b.visit(f);
            }
        }
    }

    /// Modal nesting depth.
    pub fn modal_depth(&self) -> usize {
        match self {
            Formula::Prop(_) | Formula::Bottom => 0,
            Formula::Neg(a) | Formula::Consistency(a) => a.modal_depth(),
            Formula::Box(a) | Formula::Diamond(a) | Formula::NegBox(a) | Formula::NegDiamond(a) => {
                1 + a.modal_depth()
            }
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.modal_depth().max(b.modal_depth())
            }
        }
    }

    /// Positive diamond fragment: built from propositions, `bot`, `top`,
    /// `&`, `|` and `<>` only. Formulas in it are preserved upward along
    /// simulations.
    pub fn in_positive_diamond_fragment(&self) -> bool {
        match self {
            Formula::Prop(_) | Formula::Bottom => true,
            Formula::Neg(a) => **a == Formula::Bottom,
            Formula::And(a, b) | Formula::Or(a, b) => {
                a.in_positive_diamond_fragment() && b.in_positive_diamond_fragment()
            }
            Formula::Diamond(a) => a.in_positive_diamond_fragment(),
            _ => false,
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Formula::Implies(..) => 1,
            Formula::Or(..) => 2,
            Formula::And(..) => 3,
            _ => 4,
        }
    }
}

/// Prints with minimal parentheses; parsing the output gives back the same
/// tree.
impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wrap = |f: &mut fmt::Formatter<'_>, sub: &Formula, min: u8| {
            if sub.precedence() < min {
                write!(f, "({sub})")
            } else {
                write!(f, "{sub}")
            }
        };
        let prefix = |f: &mut fmt::Formatter<'_>, op: &str, sub: &Formula| {
            f.write_str(op)?;
            wrap(f, sub, 4)
        };
        match self {
            Formula::Prop(p) => f.write_str(p),
            Formula::Bottom => f.write_str("bot"),
            Formula::Neg(a) => prefix(f, "!", a),
            Formula::Box(a) => prefix(f, "[]", a),
            Formula::Diamond(a) => prefix(f, "<>", a),
            Formula::NegBox(a) => prefix(f, "[~]", a),
            Formula::NegDiamond(a) => prefix(f, "<~>", a),
            Formula::Consistency(a) => prefix(f, "@", a),
            Formula::And(a, b) => {
                wrap(f, a, 3)?;
                f.write_str("&")?;
                wrap(f, b, 4)
            }
            Formula::Or(a, b) => {
                wrap(f, a, 2)?;
                f.write_str("|")?;
                wrap(f, b, 3)
            }
            Formula::Implies(a, b) => {
                wrap(f, a, 2)?;
                f.write_str("->")?;
                wrap(f, b, 1)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p() -> Formula {
        Formula::prop("p")
    }
    fn q() -> Formula {
        Formula::prop("q")
    }
    fn r() -> Formula {
        Formula::prop("r")
    }

    #[test]
    fn prints_minimal_parentheses() {
        assert_eq!(p().boxed().to_string(), "[]p");
        assert_eq!(p().or(q()).and(r()).to_string(), "(p|q)&r");
        assert_eq!(p().neg_box().neg_diamond().to_string(), "<~>[~]p");
        assert_eq!(p().implies(q()).implies(r()).to_string(), "(p->q)->r");
        assert_eq!(p().implies(q().implies(r())).to_string(), "p->q->r");
        assert_eq!(p().and(q().and(r())).to_string(), "p&(q&r)");
        assert_eq!(p().and(q()).neg().to_string(), "!(p&q)");
        assert_eq!(Formula::top().to_string(), "!bot");
        assert_eq!(p().strong_neg().to_string(), "p->bot");
    }

    #[test]
    fn fragment_membership() {
        assert!(p()
            .and(Formula::Bottom)
            .diamond()
            .in_positive_diamond_fragment());
        assert!(Formula::top()
            .or(p().diamond())
            .in_positive_diamond_fragment());
        assert!(!p().neg().in_positive_diamond_fragment());
        assert!(!p().boxed().in_positive_diamond_fragment());
        assert!(!p().consistency().in_positive_diamond_fragment());
        assert!(!p().implies(q()).in_positive_diamond_fragment());
        assert!(!p().neg_diamond().in_positive_diamond_fragment());
    }

    #[test]
    fn props_and_depth() {
        let f = p().boxed().and(q().or(p()).neg_diamond().diamond());
        assert_eq!(f.props(), vec!["p", "q"]);
        assert_eq!(f.modal_depth(), 2);
    }

    pub(crate) fn arb_formula() -> impl Strategy<Value = Formula> {
        let leaf = prop_oneof![
            Just(Formula::Bottom),
            "[a-z][a-z0-9_]{0,3}"
                .prop_filter("keywords", |s| s != "bot" && s != "top")
                .prop_map(Formula::Prop),
        ];
        leaf.prop_recursive(6, 48, 2, |inner| {
            prop_oneof![
                inner.clone().prop_map(Formula::neg),
                inner.clone().prop_map(Formula::boxed),
                inner.clone().prop_map(Formula::diamond),
                inner.clone().prop_map(Formula::neg_box),
                inner.clone().prop_map(Formula::neg_diamond),
                inner.clone().prop_map(Formula::consistency),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| a.and(b)),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| a.or(b)),
                (inner.clone(), inner).prop_map(|(a, b)| a.implies(b)),
            ]
        })
    }

    proptest! {
        #[test]
        fn print_parse_roundtrip(f in arb_formula()) {
            let text = f.to_string();
            prop_assert_eq!(parse_formula(&text).unwrap(), f);
        }
    }
}
