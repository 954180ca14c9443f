//! The traced completion: pairs `[M, k]` whose first `k` wires are dashed (fed back).
//!
//! `M` is a morphism `k + n → k + m`, stored as a `(k+m) × (k+n)` matrix.

use std::fmt;

use crate::algebra::{Matrix, Permutation, SemiringSpec};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TracedMorphism<S: SemiringSpec> {
    dashed: usize,
    underlying: Matrix<S>,
}

/// Wiring permutation that moves contiguous blocks: source blocks have sizes `sizes`, and
/// `order` lists source block indices in the order they appear at the destination.
pub(crate) fn block_permutation(sizes: &[usize], order: &[usize]) -> Permutation {
    let mut dest_offset = vec![0; sizes.len()];
    let mut acc = 0;
    for &b in order {
        dest_offset[b] = acc;
        acc += sizes[b];
    }
    let mut images = Vec::with_capacity(acc);
    for (b, &len) in sizes.iter().enumerate() {
        images.extend((0..len).map(|j| dest_offset[b] + j));
    }
    Permutation::new(images).expect("block order is a permutation of the blocks")
}

impl<S: SemiringSpec> TracedMorphism<S> {
    pub fn new(underlying: Matrix<S>, dashed: usize) -> Result<Self> {
        if underlying.rows() < dashed || underlying.cols() < dashed {
            return Err(Error::dims(format!(
                "a {}x{} matrix cannot carry {dashed} dashed wires",
                underlying.rows(),
                underlying.cols()
            )));
        }
        Ok(TracedMorphism { dashed, underlying })
    }

    /// ι(m) = [m, 0].
    pub fn iota(m: Matrix<S>) -> Self {
        TracedMorphism { dashed: 0, underlying: m }
    }

    /// [m, n]: every wire traced, visible arity 0 → 0.
    pub fn full_trace(m: Matrix<S>) -> Result<Self> {
        let n = m.require_square()?;
        Ok(TracedMorphism { dashed: n, underlying: m })
    }

    pub fn dashed(&self) -> usize {
        self.dashed
    }

    pub fn underlying(&self) -> &Matrix<S> {
        &self.underlying
    }

    pub fn spec(&self) -> &S {
        self.underlying.spec()
    }

    /// Visible inputs.
    pub fn n(&self) -> usize {
        self.underlying.cols() - self.dashed
    }

    /// Visible outputs.
    pub fn m(&self) -> usize {
        self.underlying.rows() - self.dashed
    }

    fn perm_matrix(&self, p: &Permutation) -> Matrix<S> {
        Matrix::permutation(self.spec().clone(), p)
    }

    /// `self ∘ other`, with a new loop of width `self.n()` carrying `other`'s outputs.
    ///
    /// Result wires are ordered `[other dashed, self dashed, loop, visible]`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        let (p, q, w) = (self.dashed, other.dashed, self.n());
        if other.m() != w {
            return Err(Error::dims(format!(
                "cannot compose: {} visible outputs into {} visible inputs",
                other.m(),
                w
            )));
        }
        let (gn, fm) = (other.n(), self.m());
        // G = N ⊕ M has inputs [q, g.n, p, w] and outputs [q, w, p, f.m]
        let g = other.underlying.direct_sum(&self.underlying)?;
        // result inputs [q, p, loop, g.n] → G inputs
        let p_in = self.perm_matrix(&block_permutation(&[q, p, w, gn], &[0, 3, 1, 2]));
        // G outputs → result outputs [q, p, loop, f.m]
        let p_out = self.perm_matrix(&block_permutation(&[q, w, p, fm], &[0, 2, 1, 3]));
        let underlying = p_out.mat_mul(&g)?.mat_mul(&p_in)?;
        Self::new(underlying, q + p + w)
    }

    /// `self ⊗ other`, gathering both dashed blocks in front.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        let (p, q) = (self.dashed, other.dashed);
        let g = self.underlying.direct_sum(&other.underlying)?;
        let p_in = self.perm_matrix(&block_permutation(&[p, q, self.n(), other.n()], &[0, 2, 1, 3]));
        let p_out = self.perm_matrix(&block_permutation(&[p, self.m(), q, other.m()], &[0, 2, 1, 3]));
        Self::new(p_out.mat_mul(&g)?.mat_mul(&p_in)?, p + q)
    }

    /// [M, k] ↦ [M, k+1]: the first visible wire joins the dashed block.
    pub fn trace(&self) -> Result<Self> {
        if self.n() == 0 || self.m() == 0 {
            return Err(Error::NothingToTrace);
        }
        Ok(TracedMorphism { dashed: self.dashed + 1, underlying: self.underlying.clone() })
    }
}

impl<S: SemiringSpec> fmt::Display for TracedMorphism<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "dashed {}", self.dashed)?;
        write!(f, "{}", self.underlying)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Integers, ZMatrix};

    fn z(rows: &[&[i64]]) -> ZMatrix {
        ZMatrix::nat(rows)
    }

    #[test]
    fn block_permutation_places_blocks() {
        let p = block_permutation(&[1, 2], &[1, 0]);
        assert_eq!(p, Permutation::block_swap(1, 2));
    }

    #[test]
    fn dashed_free_composition_is_the_product() {
        let a = z(&[&[1, 2], &[0, 1]]);
        let b = z(&[&[3, 0], &[1, 1]]);
        let c = TracedMorphism::iota(a.clone()).compose(&TracedMorphism::iota(b.clone())).unwrap();
        // loop in → a → visible out; visible in → b → loop out
        assert_eq!(c.dashed(), 2);
        let top = c.underlying().block(0, 2, 0, 2);
        assert!(top.is_zero());
        assert!(c.underlying().block(2, 4, 2, 4).is_zero());
        assert_eq!(c.underlying().block(2, 4, 0, 2), a);
        assert_eq!(c.underlying().block(0, 2, 2, 4), b);
    }

    #[test]
    fn tensor_of_plain_pairs_is_the_direct_sum() {
        let a = z(&[&[1, 2]]);
        let b = z(&[&[3], &[4]]);
        let t = TracedMorphism::iota(a.clone()).tensor(&TracedMorphism::iota(b.clone())).unwrap();
        assert_eq!(t, TracedMorphism::iota(a.direct_sum(&b).unwrap()));
        let e = TracedMorphism::iota(ZMatrix::zeros(Integers::NATURAL, 0, 0));
        assert_eq!(t.tensor(&e).unwrap(), t);
    }

    #[test]
    fn trace_needs_a_visible_wire() {
        let s = TracedMorphism::iota(z(&[&[0, 1], &[1, 0]]));
        let t = s.trace().unwrap();
        assert_eq!((t.dashed(), t.n(), t.m()), (1, 1, 1));
        assert_eq!(t.trace().unwrap().trace(), Err(Error::NothingToTrace));
    }

    #[test]
    fn full_trace_shapes() {
        let m = z(&[&[0, 2, 1], &[0, 1, 1], &[0, 0, 1]]);
        let f = TracedMorphism::full_trace(m.clone()).unwrap();
        assert_eq!((f.dashed(), f.n(), f.m()), (3, 0, 0));
        assert!(TracedMorphism::full_trace(z(&[&[1, 1]])).is_err());
        let i = TracedMorphism::iota(m);
        assert_eq!((i.n(), i.m()), (3, 3));
    }
}
