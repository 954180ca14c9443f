//! Pluggable commutative semirings.
//!
//! A [`SemiringSpec`] is a runtime descriptor carrying the operations; matrices hold one and
//! refuse to mix with a different one. Signed intermediates (`I - M`) are computed in the
//! signed relative of a nonnegative spec (`ℤ₊ → ℤ`, `ℤ₊[t] → ℤ[t]`).

use std::fmt::Debug;
use std::hash::Hash;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand::RngCore;

use super::natinf::NatInf;
use super::poly::IntPoly;
use crate::error::{Error, Result};

pub trait SemiringSpec: Clone + PartialEq + Eq + Debug + Send + Sync + 'static {
    type Elem: Clone + PartialEq + Eq + Hash + Debug + Send + Sync + 'static;

    fn name(&self) -> String;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Membership predicate, used to validate entries at module boundaries.
    fn contains(&self, a: &Self::Elem) -> bool;
    fn render(&self, a: &Self::Elem) -> String;

    /// Whether infinite sums are defined (needed for an honest partial trace).
    fn is_complete(&self) -> bool {
        false
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }
}

/// A semiring whose addition has inverses.
pub trait RingSpec: SemiringSpec {
    fn neg(&self, a: &Self::Elem) -> Self::Elem;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }
}

/// ℤ₊ (`nonnegative`) or ℤ, with arbitrary-precision elements.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Integers {
    pub nonnegative: bool,
}

impl Integers {
    pub const NATURAL: Integers = Integers { nonnegative: true };
    pub const ALL: Integers = Integers { nonnegative: false };
}

impl SemiringSpec for Integers {
    type Elem = BigInt;

    fn name(&self) -> String {
        if self.nonnegative { "zplus" } else { "z" }.to_string()
    }
    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn contains(&self, a: &BigInt) -> bool {
        !self.nonnegative || !a.is_negative()
    }
    fn render(&self, a: &BigInt) -> String {
        a.to_string()
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
}

impl RingSpec for Integers {
    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }
}

/// ℤ₊[t] (`nonnegative`) or ℤ[t].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Polynomials {
    pub nonnegative: bool,
}

impl Polynomials {
    pub const NATURAL: Polynomials = Polynomials { nonnegative: true };
    pub const ALL: Polynomials = Polynomials { nonnegative: false };
}

impl SemiringSpec for Polynomials {
    type Elem = IntPoly;

    fn name(&self) -> String {
        if self.nonnegative { "zplus_t" } else { "z_t" }.to_string()
    }
    fn zero(&self) -> IntPoly {
        IntPoly::zero()
    }
    fn one(&self) -> IntPoly {
        IntPoly::one()
    }
    fn add(&self, a: &IntPoly, b: &IntPoly) -> IntPoly {
        a + b
    }
    fn mul(&self, a: &IntPoly, b: &IntPoly) -> IntPoly {
        a * b
    }
    fn contains(&self, a: &IntPoly) -> bool {
        !self.nonnegative || a.is_nonnegative()
    }
    fn render(&self, a: &IntPoly) -> String {
        a.render_compact()
    }
    fn is_zero(&self, a: &IntPoly) -> bool {
        a.is_zero()
    }
}

impl RingSpec for Polynomials {
    fn neg(&self, a: &IntPoly) -> IntPoly {
        -a
    }
}

/// The prime field 𝔽ₚ; elements are residues in `0..p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn reduce(&self, v: &BigInt) -> u64 {
        let r = v % BigInt::from(self.p);
        let r = if r.is_negative() { r + BigInt::from(self.p) } else { r };
        u64::try_from(r).expect("residue fits")
    }

    pub fn inverse(&self, a: u64) -> Option<u64> {
        if a % self.p == 0 {
            return None;
        }
        Some(self.pow(a, self.p - 2))
    }

    pub fn pow(&self, mut base: u64, mut e: u64) -> u64 {
        let m = self.p as u128;
        let mut acc: u128 = 1;
        let mut b = (base % self.p) as u128;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * b % m;
            }
            b = b * b % m;
            e >>= 1;
        }
        base = acc as u64;
        base
    }
}

impl SemiringSpec for PrimeField {
    type Elem = u64;

    fn name(&self) -> String {
        format!("fp:{}", self.p)
    }
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + *b as u128) % self.p as u128) as u64
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.p as u128) as u64
    }
    fn contains(&self, a: &u64) -> bool {
        *a < self.p
    }
    fn render(&self, a: &u64) -> String {
        a.to_string()
    }
}

impl RingSpec for PrimeField {
    fn neg(&self, a: &u64) -> u64 {
        (self.p - a % self.p) % self.p
    }
}

/// The complete semiring ℕ∞.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct NatInfSemiring;

impl SemiringSpec for NatInfSemiring {
    type Elem = NatInf;

    fn name(&self) -> String {
        "ninf".to_string()
    }
    fn zero(&self) -> NatInf {
        NatInf::zero()
    }
    fn one(&self) -> NatInf {
        NatInf::one()
    }
    fn add(&self, a: &NatInf, b: &NatInf) -> NatInf {
        a + b
    }
    fn mul(&self, a: &NatInf, b: &NatInf) -> NatInf {
        a * b
    }
    fn contains(&self, _: &NatInf) -> bool {
        true
    }
    fn render(&self, a: &NatInf) -> String {
        a.to_string()
    }
    fn is_complete(&self) -> bool {
        true
    }
    fn is_zero(&self, a: &NatInf) -> bool {
        a.is_zero()
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Random element generation for law checking.
pub trait Sample: SemiringSpec {
    fn sample(&self, rng: &mut dyn RngCore) -> Self::Elem;
}

impl Sample for Integers {
    fn sample(&self, rng: &mut dyn RngCore) -> BigInt {
        let lo = if self.nonnegative { 0 } else { -50 };
        BigInt::from(rng.gen_range(lo..=50i64))
    }
}

impl Sample for Polynomials {
    fn sample(&self, rng: &mut dyn RngCore) -> IntPoly {
        let lo = if self.nonnegative { 0 } else { -4 };
        let deg = rng.gen_range(0..4usize);
        IntPoly::from_coeffs((0..deg).map(|_| BigInt::from(rng.gen_range(lo..=4i64))).collect())
    }
}

impl Sample for PrimeField {
    fn sample(&self, rng: &mut dyn RngCore) -> u64 {
        rng.gen_range(0..self.p)
    }
}

impl Sample for NatInfSemiring {
    fn sample(&self, rng: &mut dyn RngCore) -> NatInf {
        match rng.gen_range(0..8u32) {
            0 => NatInf::Inf,
            1 => NatInf::zero(),
            _ => NatInf::from(rng.gen_range(0..20u64)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LawViolation {
    pub semiring: String,
    pub law: &'static str,
    pub witness: String,
}

/// Object-safe handle on a registered semiring, used by the law suite and `--ring` lookup.
pub trait RegisteredSemiring: Send + Sync {
    fn name(&self) -> String;
    fn is_complete(&self) -> bool;
    /// Checks the commutative-semiring laws on `triples` sampled element triples.
    fn check_laws(&self, rng: &mut dyn RngCore, triples: usize) -> std::result::Result<(), LawViolation>;
}

impl<S: Sample> RegisteredSemiring for S {
    fn name(&self) -> String {
        SemiringSpec::name(self)
    }

    fn is_complete(&self) -> bool {
        SemiringSpec::is_complete(self)
    }

    fn check_laws(&self, rng: &mut dyn RngCore, triples: usize) -> std::result::Result<(), LawViolation> {
        for _ in 0..triples {
            let (a, b, c) = (self.sample(rng), self.sample(rng), self.sample(rng));
            let fail = |law: &'static str| LawViolation {
                semiring: SemiringSpec::name(self),
                law,
                witness: format!("a={}, b={}, c={}", self.render(&a), self.render(&b), self.render(&c)),
            };
            for x in [&a, &b, &c] {
                if !self.contains(x) {
                    return Err(fail("closure of samples"));
                }
            }
            if self.add(&self.add(&a, &b), &c) != self.add(&a, &self.add(&b, &c)) {
                return Err(fail("additive associativity"));
            }
            if self.add(&a, &b) != self.add(&b, &a) {
                return Err(fail("additive commutativity"));
            }
            if self.add(&a, &self.zero()) != a {
                return Err(fail("additive identity"));
            }
            if self.mul(&self.mul(&a, &b), &c) != self.mul(&a, &self.mul(&b, &c)) {
                return Err(fail("multiplicative associativity"));
            }
            if self.mul(&a, &b) != self.mul(&b, &a) {
                return Err(fail("multiplicative commutativity"));
            }
            if self.mul(&a, &self.one()) != a || self.mul(&self.one(), &a) != a {
                return Err(fail("multiplicative identity"));
            }
            if self.mul(&a, &self.add(&b, &c)) != self.add(&self.mul(&a, &b), &self.mul(&a, &c)) {
                return Err(fail("distributivity"));
            }
            if !self.is_zero(&self.mul(&a, &self.zero())) || !self.is_zero(&self.mul(&self.zero(), &a)) {
                return Err(fail("zero annihilates"));
            }
        }
        Ok(())
    }
}

/// Every semiring the crate ships, in registration order.
pub fn registered_semirings() -> Vec<Box<dyn RegisteredSemiring>> {
    vec![
        Box::new(Integers::NATURAL),
        Box::new(Integers::ALL),
        Box::new(Polynomials::NATURAL),
        Box::new(Polynomials::ALL),
        Box::new(PrimeField::new(2).unwrap()),
        Box::new(PrimeField::new(7).unwrap()),
        Box::new(NatInfSemiring),
    ]
}

/// Coefficient ring selected with `--ring`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RingKind {
    ZPlus,
    Z,
    ZPlusT,
    ZT,
    Fp(u64),
}

impl RingKind {
    pub fn name(&self) -> String {
        match self {
            RingKind::ZPlus => "zplus".into(),
            RingKind::Z => "z".into(),
            RingKind::ZPlusT => "zplus_t".into(),
            RingKind::ZT => "z_t".into(),
            RingKind::Fp(p) => format!("fp:{p}"),
        }
    }

    pub fn has_t(&self) -> bool {
        matches!(self, RingKind::ZPlusT | RingKind::ZT)
    }

    pub fn nonnegative(&self) -> bool {
        matches!(self, RingKind::ZPlus | RingKind::ZPlusT)
    }

    /// Whether an entry (always parsed as a polynomial) belongs to the ring.
    pub fn admits(&self, e: &IntPoly) -> bool {
        match self {
            RingKind::ZPlus => e.is_constant() && e.is_nonnegative(),
            RingKind::Z => e.is_constant(),
            RingKind::Fp(p) => {
                e.is_constant() && !e.constant_term().is_negative() && e.constant_term() < BigInt::from(*p)
            }
            RingKind::ZPlusT => e.is_nonnegative(),
            RingKind::ZT => true,
        }
    }
}

impl FromStr for RingKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "zplus" => Ok(RingKind::ZPlus),
            "z" => Ok(RingKind::Z),
            "zplus_t" => Ok(RingKind::ZPlusT),
            "z_t" => Ok(RingKind::ZT),
            _ => {
                if let Some(p) = s.strip_prefix("fp:") {
                    let p: u64 = p
                        .parse()
                        .map_err(|_| Error::Malformed(format!("bad modulus in ring '{s}'")))?;
                    PrimeField::new(p)?;
                    Ok(RingKind::Fp(p))
                } else {
                    Err(Error::Malformed(format!(
                        "unknown ring '{s}' (expected zplus, z, zplus_t, z_t or fp:<p>)"
                    )))
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    #[test]
    fn law_suite_every_registered_semiring() {
        let mut rng = StdRng::seed_from_u64(7);
        for s in registered_semirings() {
            s.check_laws(&mut rng, 150).unwrap_or_else(|v| panic!("{v:?}"));
        }
    }

    #[test]
    fn primes() {
        assert!(PrimeField::new(4).is_err());
        assert!(PrimeField::new(1).is_err());
        let f = PrimeField::new(7).unwrap();
        assert_eq!(f.inverse(3), Some(5));
        assert_eq!(f.reduce(&BigInt::from(-1)), 6);
    }

    #[test]
    fn ring_names_round_trip() {
        for r in [RingKind::ZPlus, RingKind::Z, RingKind::ZPlusT, RingKind::ZT, RingKind::Fp(5)] {
            assert_eq!(r.name().parse::<RingKind>().unwrap(), r);
        }
        assert!("fp:6".parse::<RingKind>().is_err());
        assert!("q".parse::<RingKind>().is_err());
    }
}
