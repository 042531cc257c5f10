//! The metric twisted algebra `A × A` of weight pairs.
//!
//! A pair `(a, b)` carries the degree `a` to which something holds and the
//! degree `b` to which it fails. The two components are independent, so a
//! pair can be inconsistent (both high) or vague (both low).

use std::fmt;

use serde::Serialize;

use crate::algebra::{Algebra, AlgebraError, Distance, TruthValue};

/// A weight pair `(pos, neg)`; both components belong to the same algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct WPair {
    pos: TruthValue,
    neg: TruthValue,
}

impl WPair {
    pub fn new(pos: TruthValue, neg: TruthValue) -> Result<WPair, AlgebraError> {
        if pos.algebra() != neg.algebra() {
            return Err(AlgebraError::InstanceMismatch {
                left: pos.algebra(),
                right: neg.algebra(),
            });
        }
        Ok(WPair { pos, neg })
    }

    /// `(1, 0)`: fully holds, no evidence against.
    pub fn top(algebra: Algebra) -> WPair {
        WPair {
            pos: algebra.top(),
            neg: algebra.bottom(),
        }
    }

    /// `(0, 1)`.
    pub fn bottom(algebra: Algebra) -> WPair {
        WPair {
            pos: algebra.bottom(),
            neg: algebra.top(),
        }
    }

    /// `(0, 0)`: no information either way.
    pub fn unknown(algebra: Algebra) -> WPair {
        WPair {
            pos: algebra.bottom(),
            neg: algebra.bottom(),
        }
    }

    /// Gödel pair from two `(numer, denom)` fractions; panics outside `[0,1]`.
    pub fn godel(pos: (i64, i64), neg: (i64, i64)) -> WPair {
        WPair {
            pos: TruthValue::godel(pos.0, pos.1),
            neg: TruthValue::godel(neg.0, neg.1),
        }
    }

    pub fn pos(&self) -> TruthValue {
        self.pos
    }

    pub fn neg(&self) -> TruthValue {
        self.neg
    }

    pub fn algebra(&self) -> Algebra {
        self.pos.algebra()
    }

    /// `(a ⊓ c, b ⊔ d)`
    pub fn meet(&self, other: &WPair) -> Result<WPair, AlgebraError> {
        Ok(WPair {
            pos: self.pos.meet(&other.pos)?,
            neg: self.neg.join(&other.neg)?,
        })
    }

    /// `(a ⊔ c, b ⊓ d)`
    pub fn join(&self, other: &WPair) -> Result<WPair, AlgebraError> {
        Ok(WPair {
            pos: self.pos.join(&other.pos)?,
            neg: self.neg.meet(&other.neg)?,
        })
    }

    /// `(a ⇀ c, a ⊓ d)`
    pub fn implies(&self, other: &WPair) -> Result<WPair, AlgebraError> {
        Ok(WPair {
            pos: self.pos.residuum(&other.pos)?,
            neg: self.pos.meet(&other.neg)?,
        })
    }

    /// Paraconsistent negation: swap the components.
    pub fn negate(&self) -> WPair {
        WPair {
            pos: self.neg,
            neg: self.pos,
        }
    }

    /// Truth order: `(a,b) ≼ (c,d)` iff `a <= c` and `b >= d`.
    pub fn leq(&self, other: &WPair) -> Result<bool, AlgebraError> {
        Ok(self.pos.leq(&other.pos)? && other.neg.leq(&self.neg)?)
    }

    /// Square of the induced Euclidean metric `D`. The square root is never
    /// taken; compare squares instead.
    pub fn distance_sq(&self, other: &WPair) -> Result<Distance, AlgebraError> {
        let dp = self.pos.distance(&other.pos)?;
        let dn = self.neg.distance(&other.neg)?;
        Ok(&dp * &dp + &dn * &dn)
    }

    pub fn region(&self) -> Region {
        let alg = self.algebra();
        let to_both = self
            .distance_sq(&WPair {
                pos: alg.top(),
                neg: alg.top(),
            })
            .expect("components share the algebra");
        let to_neither = self
            .distance_sq(&WPair::unknown(alg))
            .expect("components share the algebra");
        Region {
            in_delta_p: to_both <= to_neither,
            in_delta_c: to_neither <= to_both,
        }
    }
}

impl fmt::Display for WPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.pos, self.neg)
    }
}

/// Membership of a pair in the paraconsistent (`Δ_P`), consistent (`Δ_C`)
/// and strictly consistent (`Δ = Δ_P ∩ Δ_C`) regions. Boundaries are
/// non-strict, so every pair lies in at least one of `Δ_P`, `Δ_C`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Region {
    /// At least as close to `(1,1)` as to `(0,0)`.
    pub in_delta_p: bool,
    /// At least as close to `(0,0)` as to `(1,1)`.
    pub in_delta_c: bool,
}

impl Region {
    pub fn in_delta(&self) -> bool {
        self.in_delta_p && self.in_delta_c
    }

    pub fn kind(&self) -> RegionKind {
        match (self.in_delta_p, self.in_delta_c) {
            (true, true) => RegionKind::Strict,
            (true, false) => RegionKind::Inconsistent,
            _ => RegionKind::Vague,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RegionKind {
    Inconsistent,
    Vague,
    Strict,
}

impl fmt::Display for RegionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RegionKind::Inconsistent => "inconsistent",
            RegionKind::Vague => "vague",
            RegionKind::Strict => "strict",
        })
    }
}
