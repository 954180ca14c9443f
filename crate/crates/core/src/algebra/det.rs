//! Fraction-free (Bareiss) determinants over ℤ[t].

use super::matrix::PolyMatrix;
use super::poly::IntPoly;
use crate::error::{Error, Result};

/// Exact determinant of a square polynomial matrix.
///
/// Every Bareiss division must be exact; a remainder means a bug and is reported as
/// [`Error::InternalConsistency`].
pub fn det_poly(m: &PolyMatrix) -> Result<IntPoly> {
    let n = m.require_square()?;
    if n == 0 {
        return Ok(IntPoly::one());
    }
    let mut a: Vec<Vec<IntPoly>> = m.row_vecs();
    let mut prev = IntPoly::one();
    let mut negate = false;
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return Ok(IntPoly::zero());
            };
            a.swap(k, swap);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = num.div_exact(&prev).ok_or_else(|| {
                    Error::InternalConsistency(format!("Bareiss division by {prev} left a remainder"))
                })?;
            }
            a[i][k] = IntPoly::zero();
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    Ok(if negate { -&d } else { d })
}
