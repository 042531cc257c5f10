//! Paraconsistent transition systems over metric iMTL-algebras.
//!
//! Transitions and propositions carry pairs `(evidence for, evidence against)`
//! drawn from a residuated chain. [`semantics`] evaluates modal formulas to
//! such pairs, [`twist`] classifies pairs as inconsistent, vague or strictly
//! consistent, and [`relations`] checks and computes (bi)simulations.

pub mod algebra;
pub mod cli;
pub mod formula;
pub mod model;
pub mod relations;
pub mod semantics;
pub mod twist;
