//! Dense exact matrices over a [`SemiringSpec`].
//!
//! A prop morphism `n → m` is stored as an `m × n` matrix: composition is the matrix product
//! and tensor is the block-diagonal direct sum.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use super::perm::Permutation;
use super::poly::IntPoly;
use super::semiring::{Integers, Polynomials, RingSpec, SemiringSpec};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix<S: SemiringSpec> {
    spec: S,
    rows: usize,
    cols: usize,
    data: Vec<S::Elem>,
}

pub type ZMatrix = Matrix<Integers>;
pub type PolyMatrix = Matrix<Polynomials>;

impl<S: SemiringSpec> Matrix<S> {
    /// Builds a matrix from row-major entries, validating shape and membership.
    pub fn new(spec: S, rows: usize, cols: usize, data: Vec<S::Elem>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::dims(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if let Some(bad) = data.iter().find(|e| !spec.contains(e)) {
            return Err(Error::NotInSemiring { entry: spec.render(bad), semiring: spec.name() });
        }
        Ok(Matrix { spec, rows, cols, data })
    }

    pub fn from_rows(spec: S, rows: Vec<Vec<S::Elem>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::dims("ragged rows"));
        }
        Self::new(spec, r, c, rows.into_iter().flatten().collect())
    }

    pub fn from_fn(spec: S, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> S::Elem) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        debug_assert!(data.iter().all(|e| spec.contains(e)));
        Matrix { spec, rows, cols, data }
    }

    pub fn zeros(spec: S, rows: usize, cols: usize) -> Self {
        let z = spec.zero();
        Matrix { data: vec![z; rows * cols], spec, rows, cols }
    }

    pub fn identity(spec: S, n: usize) -> Self {
        let (z, o) = (spec.zero(), spec.one());
        Self::from_fn(spec, n, n, |i, j| if i == j { o.clone() } else { z.clone() })
    }

    /// The 0/1 matrix with entry `(perm(j), j) = 1`.
    pub fn permutation(spec: S, perm: &Permutation) -> Self {
        let n = perm.len();
        let (z, o) = (spec.zero(), spec.one());
        Self::from_fn(spec, n, n, |i, j| if perm.image(j) == i { o.clone() } else { z.clone() })
    }

    pub fn spec(&self) -> &S {
        &self.spec
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn require_square(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::NotSquare { rows: self.rows, cols: self.cols })
        }
    }

    pub fn get(&self, i: usize, j: usize) -> &S::Elem {
        &self.data[i * self.cols + j]
    }

    pub fn entries(&self) -> &[S::Elem] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[S::Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<S::Elem>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    /// Returns a copy with one entry replaced; fails if the value leaves the semiring.
    pub fn with_entry(&self, i: usize, j: usize, v: S::Elem) -> Result<Self> {
        if !self.spec.contains(&v) {
            return Err(Error::NotInSemiring { entry: self.spec.render(&v), semiring: self.spec.name() });
        }
        let mut out = self.clone();
        out.data[i * self.cols + j] = v;
        Ok(out)
    }

    fn same_spec(&self, other: &Self) -> Result<()> {
        if self.spec != other.spec {
            return Err(Error::SemiringMismatch { left: self.spec.name(), right: other.spec.name() });
        }
        Ok(())
    }

    pub fn mat_mul(&self, other: &Self) -> Result<Self> {
        self.same_spec(other)?;
        if self.cols != other.rows {
            return Err(Error::dims(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let s = &self.spec;
        let mut data = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = s.zero();
                for k in 0..self.cols {
                    let a = self.get(i, k);
                    if s.is_zero(a) {
                        continue;
                    }
                    acc = s.add(&acc, &s.mul(a, other.get(k, j)));
                }
                data.push(acc);
            }
        }
        Ok(Matrix { spec: s.clone(), rows: self.rows, cols: other.cols, data })
    }

    /// Block-diagonal `diag(self, other)`.
    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        self.same_spec(other)?;
        let (r1, c1) = (self.rows, self.cols);
        let z = self.spec.zero();
        Ok(Self::from_fn(self.spec.clone(), r1 + other.rows, c1 + other.cols, |i, j| {
            match (i < r1, j < c1) {
                (true, true) => self.get(i, j).clone(),
                (false, false) => other.get(i - r1, j - c1).clone(),
                _ => z.clone(),
            }
        }))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_spec(other)?;
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::dims("matrix sum of different shapes"));
        }
        let s = &self.spec;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| s.add(a, b)).collect();
        Ok(Matrix { spec: s.clone(), rows: self.rows, cols: self.cols, data })
    }

    pub fn scale(&self, c: &S::Elem) -> Self {
        let s = &self.spec;
        let data = self.data.iter().map(|a| s.mul(c, a)).collect();
        Matrix { spec: s.clone(), rows: self.rows, cols: self.cols, data }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.spec.clone(), self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    /// Kronecker product, first factor most significant.
    pub fn kronecker(&self, other: &Self) -> Result<Self> {
        self.same_spec(other)?;
        let s = &self.spec;
        Ok(Self::from_fn(s.clone(), self.rows * other.rows, self.cols * other.cols, |i, j| {
            s.mul(
                self.get(i / other.rows, j / other.cols),
                other.get(i % other.rows, j % other.cols),
            )
        }))
    }

    pub fn pow(&self, e: u32) -> Result<Self> {
        let n = self.require_square()?;
        let mut acc = Self::identity(self.spec.clone(), n);
        for _ in 0..e {
            acc = acc.mat_mul(self)?;
        }
        Ok(acc)
    }

    pub fn trace(&self) -> Result<S::Elem> {
        let n = self.require_square()?;
        let s = &self.spec;
        Ok((0..n).fold(s.zero(), |acc, i| s.add(&acc, self.get(i, i))))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|e| self.spec.is_zero(e))
    }

    /// `P·self·P⁻¹`, conjugation by the permutation matrix of `perm`: entry `(p(i), p(j))` of the
    /// result is entry `(i, j)` of `self`.
    pub fn conjugate(&self, perm: &Permutation) -> Result<Self> {
        let n = self.require_square()?;
        if perm.len() != n {
            return Err(Error::dims("conjugating permutation has the wrong size"));
        }
        let inv = perm.inverse();
        Ok(Self::from_fn(self.spec.clone(), n, n, |i, j| self.get(inv.image(i), inv.image(j)).clone()))
    }

    /// Entrywise conversion into another semiring.
    pub fn map_into<T: SemiringSpec>(&self, spec: T, f: impl Fn(&S::Elem) -> T::Elem) -> Result<Matrix<T>> {
        Matrix::new(spec, self.rows, self.cols, self.data.iter().map(f).collect())
    }

    /// Sub-block `rows r0..r1`, `cols c0..c1`.
    pub fn block(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Self {
        Self::from_fn(self.spec.clone(), r1 - r0, c1 - c0, |i, j| self.get(r0 + i, c0 + j).clone())
    }

    pub fn render_rows(&self) -> Vec<String> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|e| self.spec.render(e)).collect::<Vec<_>>().join(" "))
            .collect()
    }
}

impl<S: RingSpec> Matrix<S> {
    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_spec(other)?;
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::dims("matrix difference of different shapes"));
        }
        let s = &self.spec;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| s.sub(a, b)).collect();
        Ok(Matrix { spec: s.clone(), rows: self.rows, cols: self.cols, data })
    }

    /// `I - self`.
    pub fn identity_minus(&self) -> Result<Self> {
        let n = self.require_square()?;
        Self::identity(self.spec.clone(), n).sub(self)
    }
}

impl<S: SemiringSpec> fmt::Display for Matrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for line in self.render_rows() {
            writeln!(f, "{line}")?;
        }
        Ok(())
    }
}

impl ZMatrix {
    pub fn from_i64(nonnegative: bool, rows: &[&[i64]]) -> Result<Self> {
        let spec = Integers { nonnegative };
        Self::from_rows(spec, rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect())
    }

    /// Shorthand for a ℤ₊ matrix literal.
    pub fn nat(rows: &[&[i64]]) -> Self {
        Self::from_i64(true, rows).expect("valid nonnegative literal")
    }

    /// Re-tags as a ℤ matrix (always succeeds).
    pub fn to_signed(&self) -> ZMatrix {
        self.map_into(Integers::ALL, Clone::clone).expect("ℤ contains everything")
    }

    /// Re-tags as ℤ₊; fails on a negative entry.
    pub fn to_natural(&self) -> Result<ZMatrix> {
        self.map_into(Integers::NATURAL, Clone::clone)
    }

    /// Embeds as constant polynomials, keeping the sign discipline.
    pub fn to_poly(&self) -> PolyMatrix {
        let spec = Polynomials { nonnegative: self.spec().nonnegative };
        self.map_into(spec, |e| IntPoly::constant(e.clone())).expect("constants embed")
    }

    pub fn to_u64_rows(&self) -> Option<Vec<Vec<u64>>> {
        (0..self.rows())
            .map(|i| self.row(i).iter().map(|e| if e.is_negative() { None } else { e.to_u64() }).collect())
            .collect()
    }

    pub fn from_u64_rows(rows: &[Vec<u64>]) -> ZMatrix {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        Self::from_fn(Integers::NATURAL, r, c, |i, j| BigInt::from(rows[i][j]))
    }

    pub fn max_entry(&self) -> BigInt {
        self.entries().iter().map(|e| e.abs()).max().unwrap_or_else(BigInt::zero)
    }
}

impl PolyMatrix {
    /// Multiplies every entry by `t`.
    pub fn times_t(&self) -> PolyMatrix {
        self.map_into(*self.spec(), |e| e.shift(1)).expect("shift stays in the semiring")
    }

    pub fn to_signed(&self) -> PolyMatrix {
        self.map_into(Polynomials::ALL, Clone::clone).expect("ℤ[t] contains everything")
    }

    pub fn to_natural(&self) -> Result<PolyMatrix> {
        self.map_into(Polynomials::NATURAL, Clone::clone)
    }

    /// The integer matrix if every entry is constant.
    pub fn constant_part(&self) -> Option<ZMatrix> {
        if !self.entries().iter().all(IntPoly::is_constant) {
            return None;
        }
        let spec = Integers { nonnegative: self.spec().nonnegative };
        self.map_into(spec, IntPoly::constant_term).ok()
    }

    /// Evaluates every entry at an integer.
    pub fn eval(&self, at: &BigInt) -> ZMatrix {
        self.map_into(Integers::ALL, |e| e.eval(at)).expect("ℤ contains everything")
    }
}
