use std::fmt;
use std::ops::{Add, Mul};

use num_bigint::BigUint;
use num_traits::{One, Zero};

/// Nonnegative integers extended with an absorbing infinity.
///
/// `0 · ∞ = ∞ · 0 = 0`, so empty and zero-weighted sums stay finite.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NatInf {
    Fin(BigUint),
    Inf,
}

impl NatInf {
    pub fn zero() -> Self {
        NatInf::Fin(BigUint::zero())
    }

    pub fn one() -> Self {
        NatInf::Fin(BigUint::one())
    }

    pub fn from_u64(v: u64) -> Self {
        NatInf::Fin(BigUint::from(v))
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, NatInf::Fin(v) if v.is_zero())
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, NatInf::Inf)
    }

    pub fn finite(&self) -> Option<&BigUint> {
        match self {
            NatInf::Fin(v) => Some(v),
            NatInf::Inf => None,
        }
    }
}

impl Add for &NatInf {
    type Output = NatInf;

    fn add(self, rhs: &NatInf) -> NatInf {
        match (self, rhs) {
            (NatInf::Fin(a), NatInf::Fin(b)) => NatInf::Fin(a + b),
            _ => NatInf::Inf,
        }
    }
}

impl Mul for &NatInf {
    type Output = NatInf;

    fn mul(self, rhs: &NatInf) -> NatInf {
        if self.is_zero() || rhs.is_zero() {
            return NatInf::zero();
        }
        match (self, rhs) {
            (NatInf::Fin(a), NatInf::Fin(b)) => NatInf::Fin(a * b),
            _ => NatInf::Inf,
        }
    }
}

impl From<u64> for NatInf {
    fn from(v: u64) -> Self {
        NatInf::from_u64(v)
    }
}

impl fmt::Display for NatInf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NatInf::Fin(v) => write!(f, "{v}"),
            NatInf::Inf => write!(f, "inf"),
        }
    }
}
