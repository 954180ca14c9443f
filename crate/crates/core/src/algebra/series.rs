//! Power series truncated at a fixed order, with exact rational coefficients.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::poly::IntPoly;
use crate::error::{Error, Result};

/// `Σ_{i=0}^{order} cᵢ tⁱ` modulo `t^{order+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    order: usize,
    coeffs: Vec<BigRational>,
}

impl TruncatedSeries {
    pub fn zero(order: usize) -> Self {
        TruncatedSeries { order, coeffs: vec![BigRational::zero(); order + 1] }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = BigRational::one();
        s
    }

    /// Pads or truncates the given coefficients to `order`.
    pub fn from_coeffs(order: usize, coeffs: impl IntoIterator<Item = BigRational>) -> Self {
        let mut s = Self::zero(order);
        for (i, c) in coeffs.into_iter().take(order + 1).enumerate() {
            s.coeffs[i] = c;
        }
        s
    }

    pub fn from_poly(order: usize, p: &IntPoly) -> Self {
        Self::from_coeffs(order, p.coeffs().iter().map(|c| BigRational::from_integer(c.clone())))
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &BigRational {
        &self.coeffs[i]
    }

    fn check_order(&self, other: &Self) -> Result<()> {
        if self.order != other.order {
            return Err(Error::dims(format!("series orders {} and {}", self.order, other.order)));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(Self::from_coeffs(self.order, self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b)))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let mut out = Self::zero(self.order);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(self.order + 1 - i).enumerate() {
                out.coeffs[i + j] += a * b;
            }
        }
        Ok(out)
    }

    /// `1/f` for `f(0) = 1`.
    pub fn reciprocal(&self) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(Error::BadConstantTerm(format!("reciprocal needs constant term 1, got {}", self.coeffs[0])));
        }
        let mut g = Self::zero(self.order);
        g.coeffs[0] = BigRational::one();
        for k in 1..=self.order {
            let mut acc = BigRational::zero();
            for i in 1..=k {
                acc -= &self.coeffs[i] * &g.coeffs[k - i];
            }
            g.coeffs[k] = acc;
        }
        Ok(g)
    }

    /// Derivative, truncated to the same order (top coefficient becomes 0).
    fn derivative(&self) -> Self {
        Self::from_coeffs(
            self.order,
            (1..=self.order).map(|i| &self.coeffs[i] * BigRational::from_integer(BigInt::from(i))),
        )
    }

    /// `exp f` for `f(0) = 0`, via `g' = f' g`.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::BadConstantTerm(format!("exp needs constant term 0, got {}", self.coeffs[0])));
        }
        let df = self.derivative();
        let mut g = Self::one(self.order);
        for k in 1..=self.order {
            // k gₖ = Σ_{i=1..k} i fᵢ g_{k-i}
            let mut acc = BigRational::zero();
            for i in 1..=k {
                acc += &df.coeffs[i - 1] * &g.coeffs[k - i];
            }
            g.coeffs[k] = acc / BigRational::from_integer(BigInt::from(k));
        }
        Ok(g)
    }

    /// `log f` for `f(0) = 1`, as the integral of `f'/f`.
    pub fn log(&self) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(Error::BadConstantTerm(format!("log needs constant term 1, got {}", self.coeffs[0])));
        }
        let q = self.derivative().mul(&self.reciprocal()?)?;
        Ok(Self::from_coeffs(
            self.order,
            std::iter::once(BigRational::zero())
                .chain((1..=self.order).map(|i| &q.coeffs[i - 1] / BigRational::from_integer(BigInt::from(i)))),
        ))
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().enumerate().map(|(i, c)| format!("({c})t^{i}")).collect();
        write!(f, "{} + O(t^{})", parts.join(" + "), self.order + 1)
    }
}
