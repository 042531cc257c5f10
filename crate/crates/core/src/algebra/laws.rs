//! Brute-force law checking over a sample of the carrier.

use std::fmt;

use itertools::Itertools;
use num_traits::Zero;

use super::{Algebra, AlgebraError, TruthValue};

/// Carrier sample the laws are checked on.
#[derive(Debug, Clone)]
pub struct SampleSpace {
    pub algebra: Algebra,
    pub elements: Vec<TruthValue>,
    /// Largest family size for the distributivity laws over `⊓ᵢ`/`⊔ᵢ`.
    pub max_family: usize,
}

impl SampleSpace {
    /// Whole carrier for finite instances; grid `k/m`, `m <= max_denominator`
    /// for Gödel. Families up to size 4.
    pub fn for_algebra(algebra: Algebra, max_denominator: u32) -> Self {
        SampleSpace {
            algebra,
            elements: algebra.sample(max_denominator),
            max_family: 4,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LawOutcome {
    pub name: &'static str,
    pub statement: &'static str,
    pub cases: u64,
    pub counterexample: Option<String>,
}

impl LawOutcome {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LawReport {
    pub algebra: Algebra,
    pub sample_size: usize,
    pub laws: Vec<LawOutcome>,
}

impl LawReport {
    pub fn all_passed(&self) -> bool {
        self.laws.iter().all(LawOutcome::passed)
    }
}

impl fmt::Display for LawReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "laws for {} over {} carrier elements",
            self.algebra, self.sample_size
        )?;
        for law in &self.laws {
            match &law.counterexample {
                None => writeln!(
                    f,
                    "pass  {:<22} {} ({} cases)",
                    law.name, law.statement, law.cases
                )?,
                Some(w) => writeln!(
                    f,
                    "FAIL  {:<22} {} counterexample: {w}",
                    law.name, law.statement
                )?,
            }
        }
        Ok(())
    }
}

struct Checker {
    name: &'static str,
    statement: &'static str,
    cases: u64,
    counterexample: Option<String>,
}

impl Checker {
    fn new(name: &'static str, statement: &'static str) -> Self {
        Checker {
            name,
            statement,
            cases: 0,
            counterexample: None,
        }
    }

    fn record(&mut self, holds: Result<bool, AlgebraError>, witness: impl FnOnce() -> String) {
        self.cases += 1;
        if self.counterexample.is_some() {
            return;
        }
        match holds {
            Ok(true) => {}
            Ok(false) => self.counterexample = Some(witness()),
            Err(e) => self.counterexample = Some(format!("{} ({e})", witness())),
        }
    }

    fn finish(self) -> LawOutcome {
        LawOutcome {
            name: self.name,
            statement: self.statement,
            cases: self.cases,
            counterexample: self.counterexample,
        }
    }
}

fn show(family: &[&TruthValue]) -> String {
    format!("[{}]", family.iter().join(", "))
}

/// Checks the residuated-lattice and metric laws on every triple and every
/// family (multiset, sizes `1..=max_family`) drawn from the sample.
pub fn check_laws(space: &SampleSpace) -> LawReport {
    let alg = space.algebra;
    let xs = &space.elements;
    let one = alg.top();

    let mut adjunction = Checker::new("adjunction", "a⊓b <= c iff b <= a⇀c");
    let mut prelinearity = Checker::new("prelinearity", "(a⇀b)⊔(b⇀a) = 1");
    let mut mono = Checker::new("monotone-consequent", "a <= b implies c⇀a <= c⇀b");
    let mut anti = Checker::new("antitone-antecedent", "a <= b implies b⇀c <= a⇀c");
    let mut curry = Checker::new("currying", "a⇀(b⇀c) = (b⊓a)⇀c");
    let mut identity = Checker::new("metric-identity", "d(x,y) = 0 iff x = y");
    let mut symmetry = Checker::new("metric-symmetry", "d(x,y) = d(y,x)");
    let mut triangle = Checker::new("metric-triangle", "d(x,y) <= d(x,z) + d(z,y)");

    for a in xs {
        for b in xs {
            let w2 = || format!("a={a}, b={b}");
            prelinearity.record((|| Ok(a.residuum(b)?.join(&b.residuum(a)?)? == one))(), w2);
            identity.record(a.distance(b).map(|d| d.is_zero() == (a == b)), w2);
            symmetry.record((|| Ok(a.distance(b)? == b.distance(a)?))(), w2);
            for c in xs {
                let w3 = || format!("a={a}, b={b}, c={c}");
                adjunction.record((|| Ok(a.meet(b)?.leq(c)? == b.leq(&a.residuum(c)?)?))(), w3);
                mono.record(
                    (|| Ok(!a.leq(b)? || c.residuum(a)?.leq(&c.residuum(b)?)?))(),
                    w3,
                );
                anti.record(
                    (|| Ok(!a.leq(b)? || b.residuum(c)?.leq(&a.residuum(c)?)?))(),
                    w3,
                );
                curry.record(
                    (|| Ok(a.residuum(&b.residuum(c)?)? == b.meet(a)?.residuum(c)?))(),
                    w3,
                );
                triangle.record(
                    (|| Ok(a.distance(b)? <= a.distance(c)? + c.distance(b)?))(),
                    || format!("x={a}, y={b}, z={c}"),
                );
            }
        }
    }

    let mut meet_cons = Checker::new("residuum-of-meet", "b⇀(⊓ᵢaᵢ) = ⊓ᵢ(b⇀aᵢ)");
    let mut join_ante = Checker::new("join-antecedent", "(⊔ᵢaᵢ)⇀b = ⊓ᵢ(aᵢ⇀b)");
    let mut join_cons = Checker::new("residuum-of-join", "b⇀(⊔ᵢaᵢ) = ⊔ᵢ(b⇀aᵢ)");
    let mut meet_ante = Checker::new("meet-antecedent", "(⊓ᵢaᵢ)⇀b = ⊔ᵢ(aᵢ⇀b)");

    for size in 1..=space.max_family {
        for family in xs.iter().combinations_with_replacement(size) {
            for b in xs {
                let w = || format!("a={}, b={b}", show(&family));
                let residua_right = || -> Result<Vec<_>, AlgebraError> {
                    family.iter().map(|a| b.residuum(a)).collect()
                };
                let residua_left = || -> Result<Vec<_>, AlgebraError> {
                    family.iter().map(|a| a.residuum(b)).collect()
                };
                meet_cons.record(
                    (|| {
                        Ok(b.residuum(&alg.big_meet(family.iter().copied())?)?
                            == alg.big_meet(&residua_right()?)?)
                    })(),
                    w,
                );
                join_ante.record(
                    (|| {
                        Ok(alg.big_join(family.iter().copied())?.residuum(b)?
                            == alg.big_meet(&residua_left()?)?)
                    })(),
                    w,
                );
                join_cons.record(
                    (|| {
                        Ok(b.residuum(&alg.big_join(family.iter().copied())?)?
                            == alg.big_join(&residua_right()?)?)
                    })(),
                    w,
                );
                meet_ante.record(
                    (|| {
                        Ok(alg.big_meet(family.iter().copied())?.residuum(b)?
                            == alg.big_join(&residua_left()?)?)
                    })(),
                    w,
                );
            }
        }
    }

    LawReport {
        algebra: alg,
        sample_size: xs.len(),
        laws: [
            adjunction,
            prelinearity,
            mono,
            anti,
            curry,
            meet_cons,
            join_ante,
            join_cons,
            meet_ante,
            identity,
            symmetry,
            triangle,
        ]
        .into_iter()
        .map(Checker::finish)
        .collect(),
    }
}
