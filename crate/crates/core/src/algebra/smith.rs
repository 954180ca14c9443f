//! Smith normal form over ℤ with the unimodular transforms kept.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::ZMatrix;
use super::semiring::Integers;

/// `U · m · V = D` with `U`, `V` unimodular and `D` diagonal (divisors, then zeros).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub u: ZMatrix,
    pub d: ZMatrix,
    pub v: ZMatrix,
}

/// Output of [`smith_normal_form`]: the cokernel is `ℤ^free_rank ⊕ ⊕ ℤ/dᵢ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    /// Nonzero diagonal entries, each dividing the next; units are kept.
    pub divisors: Vec<BigInt>,
    pub free_rank: usize,
}

type Grid = Vec<Vec<BigInt>>;

fn unit_grid(n: usize) -> Grid {
    (0..n).map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect()
}

fn swap_cols(g: &mut Grid, a: usize, b: usize) {
    for row in g.iter_mut() {
        row.swap(a, b);
    }
}

// row[dst] += q * row[src]
fn add_row(g: &mut Grid, dst: usize, src: usize, q: &BigInt) {
    let src_row = g[src].clone();
    for (x, y) in g[dst].iter_mut().zip(&src_row) {
        *x += q * y;
    }
}

// col[dst] += q * col[src]
fn add_col(g: &mut Grid, dst: usize, src: usize, q: &BigInt) {
    for row in g.iter_mut() {
        let y = row[src].clone();
        row[dst] += q * y;
    }
}

fn to_matrix(g: Grid, rows: usize, cols: usize) -> ZMatrix {
    ZMatrix::from_fn(Integers::ALL, rows, cols, |i, j| g[i][j].clone())
}

/// Smallest nonzero |a_ij| in the trailing block, first in row-major order on ties.
fn pick_pivot(a: &Grid, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for (i, row) in a.iter().enumerate().skip(t) {
        for (j, x) in row.iter().enumerate().skip(t) {
            if x.is_zero() {
                continue;
            }
            if best.map_or(true, |(bi, bj)| x.abs() < a[bi][bj].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

pub fn smith_decomposition(m: &ZMatrix) -> SmithDecomposition {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a: Grid = m.row_vecs();
    let mut u = unit_grid(rows);
    let mut v = unit_grid(cols);

    let mut t = 0;
    while t < rows.min(cols) {
        let Some((pi, pj)) = pick_pivot(&a, t) else { break };
        a.swap(t, pi);
        u.swap(t, pi);
        swap_cols(&mut a, t, pj);
        swap_cols(&mut v, t, pj);

        let mut clean = true;
        for i in t + 1..rows {
            if !a[i][t].is_zero() {
                let q = -a[i][t].div_floor(&a[t][t]);
                add_row(&mut a, i, t, &q);
                add_row(&mut u, i, t, &q);
                clean &= a[i][t].is_zero();
            }
        }
        for j in t + 1..cols {
            if !a[t][j].is_zero() {
                let q = -a[t][j].div_floor(&a[t][t]);
                add_col(&mut a, j, t, &q);
                add_col(&mut v, j, t, &q);
                clean &= a[t][j].is_zero();
            }
        }
        if !clean {
            // a strictly smaller remainder now exists; re-pivot
            continue;
        }
        // enforce the divisibility chain
        let offender = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a[i][j].is_multiple_of(&a[t][t])));
        if let Some(i) = offender {
            let one = BigInt::one();
            add_row(&mut a, t, i, &one);
            add_row(&mut u, t, i, &one);
            continue;
        }
        if a[t][t].is_negative() {
            let neg = -BigInt::one();
            for x in a[t].iter_mut() {
                *x *= &neg;
            }
            for x in u[t].iter_mut() {
                *x *= &neg;
            }
        }
        t += 1;
    }

    SmithDecomposition { u: to_matrix(u, rows, rows), d: to_matrix(a, rows, cols), v: to_matrix(v, cols, cols) }
}

/// Divisors and free rank of the cokernel `ℤ^rows / m·ℤ^cols`.
pub fn smith_normal_form(m: &ZMatrix) -> SmithForm {
    let dec = smith_decomposition(m);
    let divisors: Vec<BigInt> = (0..m.rows().min(m.cols()))
        .map(|i| dec.d.get(i, i).clone())
        .take_while(|d| !d.is_zero())
        .collect();
    SmithForm { free_rank: m.rows() - divisors.len(), divisors }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(rows: &[&[i64]]) -> ZMatrix {
        ZMatrix::from_i64(false, rows).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn identity_has_unit_divisors() {
        let f = smith_normal_form(&z(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]));
        assert_eq!(f, SmithForm { divisors: ints(&[1, 1, 1]), free_rank: 0 });
    }

    #[test]
    fn zero_map_is_free() {
        assert_eq!(smith_normal_form(&z(&[&[0]])), SmithForm { divisors: vec![], free_rank: 1 });
    }

    #[test]
    fn coprime_diagonal_merges() {
        assert_eq!(smith_normal_form(&z(&[&[2, 0], &[0, 3]])).divisors, ints(&[1, 6]));
    }

    #[test]
    fn decomposition_reconstructs() {
        let m = z(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
        let dec = smith_decomposition(&m);
        assert_eq!(dec.u.mat_mul(&m).unwrap().mat_mul(&dec.v).unwrap(), dec.d);
        assert_eq!(smith_normal_form(&m).divisors, ints(&[2, 6, 12]));
    }

    #[test]
    fn empty_matrices() {
        let e = ZMatrix::zeros(Integers::ALL, 0, 0);
        assert_eq!(smith_normal_form(&e), SmithForm { divisors: vec![], free_rank: 0 });
    }
}
