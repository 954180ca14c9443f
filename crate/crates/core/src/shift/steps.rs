//! Elementary steps on square matrices and their replay.

use crate::algebra::{Matrix, Permutation, PolyMatrix, Polynomials, RingSpec, SemiringSpec};
use crate::algebra::IntPoly;
use crate::error::{Error, Result};
use crate::prop::Direction;

/// One step of a certificate. Row indices are 0-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Step {
    /// Forward: source = R·S, target = S·R. Backward: the reverse.
    Factor { direction: Direction, r: PolyMatrix, s: PolyMatrix },
    ExpandRow { row: usize },
    ContractRow { row: usize },
    /// `M ↦ P·M·P⁻¹` with `P` sending index `i` to `perm[i]`.
    Permute { perm: Permutation },
    /// Forward: row `to` of `I − M` gains `multiplier ×` row `from`. Backward subtracts it.
    RowAdd { from: usize, to: usize, multiplier: IntPoly, direction: Direction },
    /// Forward: column `to` of `I − M` gains `multiplier ×` column `from`.
    ColAdd { from: usize, to: usize, multiplier: IntPoly, direction: Direction },
    /// Forward appends a zero row and column; backward removes a zero last row and column.
    Stabilize { direction: Direction },
}

impl Step {
    pub fn type_name(&self) -> &'static str {
        match self {
            Step::Factor { .. } => "factor",
            Step::ExpandRow { .. } => "expand_row",
            Step::ContractRow { .. } => "contract_row",
            Step::Permute { .. } => "permute",
            Step::RowAdd { .. } => "row_add",
            Step::ColAdd { .. } => "col_add",
            Step::Stabilize { .. } => "stabilize",
        }
    }

    /// The step that undoes this one.
    pub fn inverse(&self) -> Step {
        match self {
            Step::Factor { direction, r, s } => Step::Factor { direction: direction.flip(), r: r.clone(), s: s.clone() },
            Step::ExpandRow { row } => Step::ContractRow { row: *row },
            Step::ContractRow { row } => Step::ExpandRow { row: *row },
            Step::Permute { perm } => Step::Permute { perm: perm.inverse() },
            Step::RowAdd { from, to, multiplier, direction } => {
                Step::RowAdd { from: *from, to: *to, multiplier: multiplier.clone(), direction: direction.flip() }
            }
            Step::ColAdd { from, to, multiplier, direction } => {
                Step::ColAdd { from: *from, to: *to, multiplier: multiplier.clone(), direction: direction.flip() }
            }
            Step::Stabilize { direction } => Step::Stabilize { direction: direction.flip() },
        }
    }
}

/// Row expansion: conjugate `row` to the front, write the result as `(a; A)`, and return
/// `[[0 … 0, 1], [A | 0], [a | 0]]`.
pub fn ps_expand<S: SemiringSpec>(m: &Matrix<S>, row: usize) -> Result<Matrix<S>> {
    let n = m.require_square()?;
    if row >= n {
        return Err(Error::RowOutOfRange { row, size: n });
    }
    let c = m.conjugate(&Permutation::transposition(n, 0, row))?;
    let spec = m.spec().clone();
    let (z, o) = (spec.zero(), spec.one());
    Ok(Matrix::from_fn(spec, n + 1, n + 1, |i, j| match (i, j) {
        (0, j) => if j == n { o.clone() } else { z.clone() },
        (_, j) if j == n => z.clone(),
        (i, j) if i < n => c.get(i, j).clone(),
        (_, j) => c.get(0, j).clone(),
    }))
}

/// Exact inverse of [`ps_expand`] at `row`; refuses anything but the exact pattern.
pub fn contract_row<S: SemiringSpec>(x: &Matrix<S>, row: usize) -> Result<Matrix<S>> {
    let size = x.require_square()?;
    if size < 2 {
        return Err(Error::StepRejected("a 1x1 matrix has nothing to contract".into()));
    }
    let n = size - 1;
    if row >= n {
        return Err(Error::RowOutOfRange { row, size: n });
    }
    let s = x.spec();
    let first_row_ok = (0..n).all(|j| s.is_zero(x.get(0, j))) && *x.get(0, n) == s.one();
    let last_col_ok = (1..=n).all(|i| s.is_zero(x.get(i, n)));
    if !first_row_ok || !last_col_ok {
        return Err(Error::StepRejected("matrix does not match the row-expansion pattern".into()));
    }
    let spec = s.clone();
    let c = Matrix::from_fn(spec, n, n, |i, j| if i == 0 { x.get(n, j).clone() } else { x.get(i, j).clone() });
    c.conjugate(&Permutation::transposition(n, 0, row))
}

fn elementary<S: RingSpec>(spec: &S, n: usize, from: usize, to: usize, c: &S::Elem) -> Matrix<S> {
    let (z, o) = (spec.zero(), spec.one());
    Matrix::from_fn(spec.clone(), n, n, |i, j| {
        if i == j {
            o.clone()
        } else if i == to && j == from {
            c.clone()
        } else {
            z.clone()
        }
    })
}

fn signed_multiplier(multiplier: &IntPoly, direction: Direction) -> IntPoly {
    match direction {
        Direction::Forward => multiplier.clone(),
        Direction::Backward => -multiplier,
    }
}

/// Applies one positive-equivalence step to a ℤ₊[t] matrix.
pub fn positive_step_apply(m: &PolyMatrix, step: &Step) -> Result<PolyMatrix> {
    let n = m.require_square()?;
    let signed = Polynomials::ALL;
    let check_indices = |from: usize, to: usize| -> Result<()> {
        if from >= n || to >= n {
            return Err(Error::RowOutOfRange { row: from.max(to), size: n });
        }
        if from == to {
            return Err(Error::StepRejected("row/column operation needs two different indices".into()));
        }
        Ok(())
    };
    let back_to_natural = |a: PolyMatrix| -> Result<PolyMatrix> {
        let mprime = a.identity_minus()?;
        mprime.to_natural().map_err(|_| Error::StepRejected("result leaves Z+[t]".into()))
    };
    match step {
        Step::RowAdd { from, to, multiplier, direction } => {
            check_indices(*from, *to)?;
            let a = m.to_signed().identity_minus()?;
            let e = elementary(&signed, n, *from, *to, &signed_multiplier(multiplier, *direction));
            back_to_natural(e.mat_mul(&a)?)
        }
        Step::ColAdd { from, to, multiplier, direction } => {
            check_indices(*from, *to)?;
            let a = m.to_signed().identity_minus()?;
            // column `to` += c · column `from` is right multiplication by E with E[from][to] = c
            let e = elementary(&signed, n, *to, *from, &signed_multiplier(multiplier, *direction));
            back_to_natural(a.mat_mul(&e)?)
        }
        Step::Stabilize { direction: Direction::Forward } => {
            m.direct_sum(&Matrix::zeros(*m.spec(), 1, 1))
        }
        Step::Stabilize { direction: Direction::Backward } => {
            if n == 0 {
                return Err(Error::StepRejected("nothing to destabilize".into()));
            }
            let last = n - 1;
            if (0..n).any(|k| !m.get(last, k).is_zero() || !m.get(k, last).is_zero()) {
                return Err(Error::StepRejected("last row and column must be zero to destabilize".into()));
            }
            Ok(m.block(0, last, 0, last))
        }
        other => Err(Error::StepRejected(format!("{} is not a positive-equivalence step", other.type_name()))),
    }
}

/// Replays any step on `m`.
pub fn apply_step(m: &PolyMatrix, step: &Step) -> Result<PolyMatrix> {
    match step {
        Step::Factor { direction, r, s } => {
            let (r, s) = (r.to_signed(), s.to_signed());
            let (from, to) = match direction {
                Direction::Forward => (r.mat_mul(&s)?, s.mat_mul(&r)?),
                Direction::Backward => (s.mat_mul(&r)?, r.mat_mul(&s)?),
            };
            if from != m.to_signed() {
                return Err(Error::StepRejected("the factorization does not reproduce the current matrix".into()));
            }
            to.map_into(*m.spec(), Clone::clone)
                .map_err(|_| Error::StepRejected("the factored product leaves the ring".into()))
        }
        Step::ExpandRow { row } => ps_expand(m, *row),
        Step::ContractRow { row } => contract_row(m, *row),
        Step::Permute { perm } => {
            if perm.len() != m.rows() {
                return Err(Error::StepRejected("permutation has the wrong size".into()));
            }
            m.conjugate(perm)
        }
        _ => positive_step_apply(m, step),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{det_poly, ZMatrix};

    fn p(rows: &[&[i64]]) -> PolyMatrix {
        ZMatrix::nat(rows).to_poly()
    }

    #[test]
    fn expansion_examples() {
        assert_eq!(ps_expand(&p(&[&[2]]), 0).unwrap(), p(&[&[0, 1], &[2, 0]]));
        assert_eq!(ps_expand(&p(&[&[1, 1], &[1, 0]]), 0).unwrap(), p(&[&[0, 0, 1], &[1, 0, 0], &[1, 1, 0]]));
        assert!(matches!(ps_expand(&p(&[&[1]]), 1), Err(Error::RowOutOfRange { .. })));
    }

    #[test]
    fn contraction_inverts_expansion() {
        let m = p(&[&[1, 2, 0], &[0, 1, 3], &[1, 0, 1]]);
        for row in 0..3 {
            assert_eq!(contract_row(&ps_expand(&m, row).unwrap(), row).unwrap(), m);
        }
        assert!(contract_row(&m, 0).is_err());
    }

    #[test]
    fn zero_multiplier_is_identity() {
        let m = p(&[&[1, 1], &[1, 0]]);
        let step = Step::RowAdd { from: 0, to: 1, multiplier: IntPoly::zero(), direction: Direction::Forward };
        assert_eq!(positive_step_apply(&m, &step).unwrap(), m);
    }

    #[test]
    fn stabilize_pads() {
        let m = p(&[&[2]]).times_t();
        let s = positive_step_apply(&m, &Step::Stabilize { direction: Direction::Forward }).unwrap();
        assert_eq!(s, p(&[&[2, 0], &[0, 0]]).times_t());
        assert_eq!(positive_step_apply(&s, &Step::Stabilize { direction: Direction::Backward }).unwrap(), m);
    }

    #[test]
    fn row_add_with_t_preserves_det() {
        // M = [[t, t], [t, 0]]; adding t·row 0 to row 1 of I − M
        let m = p(&[&[1, 1], &[1, 0]]).times_t();
        let step = Step::RowAdd { from: 1, to: 0, multiplier: IntPoly::t(), direction: Direction::Forward };
        let before = det_poly(&m.to_signed().identity_minus().unwrap()).unwrap();
        match positive_step_apply(&m, &step) {
            Ok(mp) => assert_eq!(det_poly(&mp.to_signed().identity_minus().unwrap()).unwrap(), before),
            Err(e) => panic!("{e}"),
        }
    }

    #[test]
    fn leaving_the_cone_is_rejected() {
        let m = p(&[&[0, 0], &[0, 0]]);
        let step = Step::RowAdd { from: 0, to: 1, multiplier: IntPoly::one(), direction: Direction::Forward };
        assert!(matches!(positive_step_apply(&m, &step), Err(Error::StepRejected(_))));
    }

    #[test]
    fn row_add_relates_expansion_to_a_duplicate_row() {
        // from [[0,1],[A,0],[a,0]], adding the last row to the first gives [[a,0],[A,0],[a,0]]
        let x = ps_expand(&p(&[&[1, 1], &[1, 0]]), 0).unwrap();
        let step = Step::RowAdd { from: 2, to: 0, multiplier: IntPoly::one(), direction: Direction::Forward };
        assert_eq!(positive_step_apply(&x, &step).unwrap(), p(&[&[1, 1, 0], &[1, 0, 0], &[1, 1, 0]]));
    }
}
