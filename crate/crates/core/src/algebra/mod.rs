//! Complete-chain iMTL-algebras with a metric on the carrier.
//!
//! Four instances are supported: the Boolean algebra `bool2`, the
//! three-element chain `chain3` (`bot < u < top`), finite chains `chain(n)`
//! addressed by rank, and the Gödel algebra on the rational points of `[0,1]`.
//! Every instance is totally ordered, meet and monoidal product coincide, and
//! the residuum is Gödel implication.
//!
//! Values of different instances never mix: binary operations return
//! [`AlgebraError::InstanceMismatch`] instead of guessing.

mod laws;
mod literal;

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub use laws::{check_laws, LawOutcome, LawReport, SampleSpace};
pub use literal::LiteralError;

/// Exact non-negative distance between carrier elements.
pub type Distance = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("values from different algebras: {left} and {right}")]
    InstanceMismatch { left: Algebra, right: Algebra },
    #[error("chain size must be at least 2, got {0}")]
    ChainTooSmall(u32),
    #[error("unknown algebra `{0}` (expected bool2, chain3, chain:<n> or godel)")]
    UnknownAlgebra(String),
}

/// One of the supported metric iMTL-algebras.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Algebra {
    Bool2,
    Chain3,
    /// Chain of `n >= 2` elements, ranks `0..n`.
    Chain(u32),
    Godel,
}

/// The three-element chain `bot < u < top`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Chain3 {
    Bot,
    Unknown,
    Top,
}

impl Chain3 {
    pub fn rank(self) -> u32 {
        self as u32
    }

    fn from_rank(rank: u32) -> Self {
        match rank {
            0 => Chain3::Bot,
            1 => Chain3::Unknown,
            _ => Chain3::Top,
        }
    }
}

/// A rational number in `[0,1]`, always in lowest terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UnitRational(Ratio<i64>);

impl UnitRational {
    pub const ZERO: UnitRational = UnitRational(Ratio::new_raw(0, 1));
    pub const ONE: UnitRational = UnitRational(Ratio::new_raw(1, 1));

    /// Returns `None` if the value lies outside `[0,1]` or `denom == 0`.
    pub fn new(numer: i64, denom: i64) -> Option<Self> {
        if denom == 0 {
            return None;
        }
        Self::from_ratio(Ratio::new(numer, denom))
    }

    pub fn from_ratio(r: Ratio<i64>) -> Option<Self> {
        if r < Ratio::zero() || r > Ratio::one() {
            None
        } else {
            Some(UnitRational(r))
        }
    }

    pub fn ratio(self) -> Ratio<i64> {
        self.0
    }

    fn to_big(self) -> BigRational {
        BigRational::new(BigInt::from(*self.0.numer()), BigInt::from(*self.0.denom()))
    }
}

/// An element of the carrier of some [`Algebra`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TruthValue {
    Bool2(bool),
    Chain3(Chain3),
    ChainN { rank: u32, size: u32 },
    Unit(UnitRational),
}

impl TruthValue {
    /// Gödel value `numer/denom`; panics outside `[0,1]`.
    pub fn godel(numer: i64, denom: i64) -> TruthValue {
        TruthValue::Unit(UnitRational::new(numer, denom).expect("godel value outside [0,1]"))
    }

    pub fn algebra(&self) -> Algebra {
        match self {
            TruthValue::Bool2(_) => Algebra::Bool2,
            TruthValue::Chain3(_) => Algebra::Chain3,
            TruthValue::ChainN { size, .. } => Algebra::Chain(*size),
            TruthValue::Unit(_) => Algebra::Godel,
        }
    }

    fn same_instance(&self, other: &TruthValue) -> Result<Algebra, AlgebraError> {
        let (left, right) = (self.algebra(), other.algebra());
        if left == right {
            Ok(left)
        } else {
            Err(AlgebraError::InstanceMismatch { left, right })
        }
    }

    /// Position in the chain order.
    pub fn try_cmp(&self, other: &TruthValue) -> Result<Ordering, AlgebraError> {
        self.same_instance(other)?;
        Ok(match (self, other) {
            (TruthValue::Bool2(a), TruthValue::Bool2(b)) => a.cmp(b),
            (TruthValue::Chain3(a), TruthValue::Chain3(b)) => a.cmp(b),
            (TruthValue::ChainN { rank: a, .. }, TruthValue::ChainN { rank: b, .. }) => a.cmp(b),
            (TruthValue::Unit(a), TruthValue::Unit(b)) => a.cmp(b),
            _ => unreachable!("instance checked above"),
        })
    }

    pub fn leq(&self, other: &TruthValue) -> Result<bool, AlgebraError> {
        Ok(self.try_cmp(other)? != Ordering::Greater)
    }

    pub fn meet(&self, other: &TruthValue) -> Result<TruthValue, AlgebraError> {
        Ok(match self.try_cmp(other)? {
            Ordering::Greater => *other,
            _ => *self,
        })
    }

    pub fn join(&self, other: &TruthValue) -> Result<TruthValue, AlgebraError> {
        Ok(match self.try_cmp(other)? {
            Ordering::Less => *other,
            _ => *self,
        })
    }

    /// Right adjoint of meet: `self ⊓ b <= c  iff  b <= self ⇀ c`.
    /// On a chain this is Gödel implication.
    pub fn residuum(&self, other: &TruthValue) -> Result<TruthValue, AlgebraError> {
        let algebra = self.same_instance(other)?;
        Ok(if self.leq(other)? {
            algebra.top()
        } else {
            *other
        })
    }

    /// Carrier metric: discrete on `bool2`, rank distance on finite chains,
    /// `|a - b|` on Gödel.
    pub fn distance(&self, other: &TruthValue) -> Result<Distance, AlgebraError> {
        self.same_instance(other)?;
        let int = |n: i64| BigRational::from_integer(BigInt::from(n));
        Ok(match (self, other) {
            (TruthValue::Bool2(a), TruthValue::Bool2(b)) => int(i64::from(a != b)),
            (TruthValue::Chain3(a), TruthValue::Chain3(b)) => {
                int((i64::from(a.rank()) - i64::from(b.rank())).abs())
            }
            (TruthValue::ChainN { rank: a, .. }, TruthValue::ChainN { rank: b, .. }) => {
                int((i64::from(*a) - i64::from(*b)).abs())
            }
            (TruthValue::Unit(a), TruthValue::Unit(b)) => (a.to_big() - b.to_big()).abs(),
            _ => unreachable!("instance checked above"),
        })
    }

    pub fn is_top(&self) -> bool {
        *self == self.algebra().top()
    }

    pub fn is_bottom(&self) -> bool {
        *self == self.algebra().bottom()
    }
}

impl fmt::Display for TruthValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&literal::format(self))
    }
}

impl Algebra {
    pub fn chain(n: u32) -> Result<Algebra, AlgebraError> {
        if n < 2 {
            Err(AlgebraError::ChainTooSmall(n))
        } else {
            Ok(Algebra::Chain(n))
        }
    }

    /// Parses `bool2`, `chain3`, `chain:<n>` or `godel`.
    pub fn from_name(name: &str) -> Result<Algebra, AlgebraError> {
        match name {
            "bool2" => Ok(Algebra::Bool2),
            "chain3" => Ok(Algebra::Chain3),
            "godel" => Ok(Algebra::Godel),
            other => match other.strip_prefix("chain:").map(str::parse::<u32>) {
                Some(Ok(n)) => Algebra::chain(n),
                _ => Err(AlgebraError::UnknownAlgebra(other.to_string())),
            },
        }
    }

    pub fn name(&self) -> String {
        match self {
            Algebra::Bool2 => "bool2".into(),
            Algebra::Chain3 => "chain3".into(),
            Algebra::Chain(n) => format!("chain:{n}"),
            Algebra::Godel => "godel".into(),
        }
    }

    pub fn top(&self) -> TruthValue {
        match *self {
            Algebra::Bool2 => TruthValue::Bool2(true),
            Algebra::Chain3 => TruthValue::Chain3(Chain3::Top),
            Algebra::Chain(n) => TruthValue::ChainN {
                rank: n - 1,
                size: n,
            },
            Algebra::Godel => TruthValue::Unit(UnitRational::ONE),
        }
    }

    pub fn bottom(&self) -> TruthValue {
        match *self {
            Algebra::Bool2 => TruthValue::Bool2(false),
            Algebra::Chain3 => TruthValue::Chain3(Chain3::Bot),
            Algebra::Chain(n) => TruthValue::ChainN { rank: 0, size: n },
            Algebra::Godel => TruthValue::Unit(UnitRational::ZERO),
        }
    }

    /// Whether `v` is an element of this algebra's carrier.
    pub fn contains(&self, v: &TruthValue) -> bool {
        match (self, v) {
            (Algebra::Chain(n), TruthValue::ChainN { rank, size }) => size == n && rank < n,
            _ => v.algebra() == *self,
        }
    }

    /// All carrier elements in ascending order, or `None` for the Gödel algebra.
    pub fn elements(&self) -> Option<Vec<TruthValue>> {
        match *self {
            Algebra::Bool2 => Some(vec![TruthValue::Bool2(false), TruthValue::Bool2(true)]),
            Algebra::Chain3 => Some(
                (0..3)
                    .map(|r| TruthValue::Chain3(Chain3::from_rank(r)))
                    .collect(),
            ),
            Algebra::Chain(n) => Some(
                (0..n)
                    .map(|rank| TruthValue::ChainN { rank, size: n })
                    .collect(),
            ),
            Algebra::Godel => None,
        }
    }

    /// Gödel grid points `k/m` with `m <= max_denominator`, ascending and
    /// deduplicated. Finite instances return their full carrier.
    pub fn sample(&self, max_denominator: u32) -> Vec<TruthValue> {
        if let Some(all) = self.elements() {
            return all;
        }
        let mut points: Vec<UnitRational> = (1..=i64::from(max_denominator.max(1)))
            .flat_map(|m| (0..=m).map(move |k| UnitRational::new(k, m).unwrap()))
            .collect();
        points.sort();
        points.dedup();
        points.into_iter().map(TruthValue::Unit).collect()
    }

    /// `k` evenly spaced Gödel points `i/(k-1)`; finite instances return
    /// their carrier.
    pub fn grid(&self, k: u32) -> Vec<TruthValue> {
        if let Some(all) = self.elements() {
            return all;
        }
        let steps = i64::from(k.max(2) - 1);
        (0..=steps).map(|i| TruthValue::godel(i, steps)).collect()
    }

    pub fn parse_literal(&self, text: &str) -> Result<TruthValue, LiteralError> {
        literal::parse(*self, text)
    }

    fn check(&self, v: &TruthValue) -> Result<(), AlgebraError> {
        if self.contains(v) {
            Ok(())
        } else {
            Err(AlgebraError::InstanceMismatch {
                left: *self,
                right: v.algebra(),
            })
        }
    }

    /// Infimum of a family; the empty family yields top.
    pub fn big_meet<'a, I>(&self, values: I) -> Result<TruthValue, AlgebraError>
    where
        I: IntoIterator<Item = &'a TruthValue>,
    {
        values.into_iter().try_fold(self.top(), |acc, v| {
            self.check(v)?;
            acc.meet(v)
        })
    }

    /// Supremum of a family; the empty family yields bottom.
    pub fn big_join<'a, I>(&self, values: I) -> Result<TruthValue, AlgebraError>
    where
        I: IntoIterator<Item = &'a TruthValue>,
    {
        values.into_iter().try_fold(self.bottom(), |acc, v| {
            self.check(v)?;
            acc.join(v)
        })
    }
}

impl fmt::Display for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}
