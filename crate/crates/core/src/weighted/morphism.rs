//! ℕ∞-weighted relations between tuples over a finite index set of size `base`.
//!
//! A morphism `n → m` is a `base^m × base^n` matrix; tuples are indexed in mixed radix with
//! the first wire as the most significant digit.

use crate::algebra::{Matrix, NatInf, NatInfSemiring, SemiringSpec};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeightedMorphism {
    base: usize,
    n: usize,
    m: usize,
    matrix: Matrix<NatInfSemiring>,
}

pub fn encode(base: usize, digits: &[usize]) -> usize {
    digits.iter().fold(0, |acc, &d| acc * base + d)
}

pub fn decode(base: usize, wires: usize, mut index: usize) -> Vec<usize> {
    let mut out = vec![0; wires];
    for slot in out.iter_mut().rev() {
        *slot = index % base;
        index /= base;
    }
    out
}

/// `base^wires`, failing above `limit`.
pub fn checked_power(base: usize, wires: usize, limit: u64) -> Result<usize> {
    let mut acc: u64 = 1;
    for _ in 0..wires {
        acc = acc.saturating_mul(base as u64);
        if acc > limit {
            return Err(Error::BudgetExceeded { needed: format!("{base}^{wires}"), limit });
        }
    }
    Ok(acc as usize)
}

impl WeightedMorphism {
    pub fn new(base: usize, n: usize, m: usize, matrix: Matrix<NatInfSemiring>) -> Result<Self> {
        if base == 0 {
            return Err(Error::Model("index set must be nonempty".into()));
        }
        if matrix.rows() != base.pow(m as u32) || matrix.cols() != base.pow(n as u32) {
            return Err(Error::dims(format!(
                "a {n} -> {m} weighted morphism over {base} values must be {}x{}, got {}x{}",
                base.pow(m as u32),
                base.pow(n as u32),
                matrix.rows(),
                matrix.cols()
            )));
        }
        Ok(WeightedMorphism { base, n, m, matrix })
    }

    /// Graph of a function `X^n → X^m`: entry `(f(y), y) = 1`.
    pub fn from_function(base: usize, n: usize, m: usize, f: impl Fn(&[usize]) -> Vec<usize>) -> Self {
        let (rows, cols) = (base.pow(m as u32), base.pow(n as u32));
        let mut data = vec![NatInf::zero(); rows * cols];
        for y in 0..cols {
            let out = f(&decode(base, n, y));
            debug_assert_eq!(out.len(), m);
            data[encode(base, &out) * cols + y] = NatInf::one();
        }
        let matrix = Matrix::new(NatInfSemiring, rows, cols, data).expect("shape is right");
        WeightedMorphism { base, n, m, matrix }
    }

    pub fn identity(base: usize, wires: usize) -> Self {
        Self::from_function(base, wires, wires, <[usize]>::to_vec)
    }

    /// σ_{a,b}: `(x, y) ↦ (y, x)` with `x` of `a` wires.
    pub fn symmetry(base: usize, a: usize, b: usize) -> Self {
        Self::from_function(base, a + b, a + b, |v| v[a..].iter().chain(&v[..a]).copied().collect())
    }

    pub fn scalar(base: usize, v: NatInf) -> Self {
        WeightedMorphism { base, n: 0, m: 0, matrix: Matrix::new(NatInfSemiring, 1, 1, vec![v]).unwrap() }
    }

    pub fn base(&self) -> usize {
        self.base
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn matrix(&self) -> &Matrix<NatInfSemiring> {
        &self.matrix
    }

    /// Weight of output tuple `z` from input tuple `y`.
    pub fn weight(&self, z: &[usize], y: &[usize]) -> &NatInf {
        self.matrix.get(encode(self.base, z), encode(self.base, y))
    }

    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.base != other.base || self.n != other.m {
            return Err(Error::dims(format!("cannot compose {}->{} after {}->{}", self.n, self.m, other.n, other.m)));
        }
        Self::new(self.base, other.n, self.m, self.matrix.mat_mul(&other.matrix)?)
    }

    pub fn tensor(&self, other: &Self) -> Result<Self> {
        if self.base != other.base {
            return Err(Error::dims("tensor of morphisms over different index sets"));
        }
        Self::new(self.base, self.n + other.n, self.m + other.m, self.matrix.kronecker(&other.matrix)?)
    }

    /// `(tr f)(z, y) = Σ_x f((x, z), (x, y))`, tracing the first wire.
    pub fn partial_trace(&self) -> Result<Self> {
        if self.n == 0 || self.m == 0 {
            return Err(Error::NothingToTrace);
        }
        Self::new(self.base, self.n - 1, self.m - 1, partial_trace_matrix(self.base, &self.matrix))
    }

    /// Traces the first `k` wires.
    pub fn partial_trace_times(&self, k: usize) -> Result<Self> {
        (0..k).try_fold(self.clone(), |acc, _| acc.partial_trace())
    }

    pub fn is_identity(&self) -> bool {
        self.n == self.m && self.matrix == Matrix::identity(NatInfSemiring, self.matrix.rows())
    }

    pub fn render_rows(&self) -> Vec<String> {
        self.matrix.render_rows()
    }
}

/// Partial trace of the leading wire of a matrix whose dimensions are multiples of `base`.
pub fn partial_trace_matrix(base: usize, f: &Matrix<NatInfSemiring>) -> Matrix<NatInfSemiring> {
    let (rows, cols) = (f.rows() / base, f.cols() / base);
    let s = NatInfSemiring;
    Matrix::from_fn(s, rows, cols, |z, y| {
        (0..base).fold(NatInf::zero(), |acc, x| s.add(&acc, f.get(x * rows + z, x * cols + y)))
    })
}
