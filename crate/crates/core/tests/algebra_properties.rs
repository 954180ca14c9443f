mod common;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use sft_core::algebra::{det_poly, registered_semirings, smith_decomposition, smith_normal_form, NatInf, NatInfSemiring, SemiringSpec, ZMatrix};

fn int_matrix(rows: usize, cols: usize, vals: &[i64]) -> ZMatrix {
    let grid: Vec<Vec<i64>> = (0..rows).map(|i| vals[i * cols..(i + 1) * cols].to_vec()).collect();
    let refs: Vec<&[i64]> = grid.iter().map(Vec::as_slice).collect();
    ZMatrix::from_i64(false, &refs).unwrap()
}

fn matrix_strategy(max: usize) -> impl Strategy<Value = ZMatrix> {
    (1..=max, 1..=max).prop_flat_map(|(r, c)| prop::collection::vec(-6i64..=6, r * c).prop_map(move |v| int_matrix(r, c, &v)))
}

fn square_strategy(max: usize) -> impl Strategy<Value = ZMatrix> {
    (1..=max).prop_flat_map(|n| prop::collection::vec(-4i64..=4, n * n).prop_map(move |v| int_matrix(n, n, &v)))
}

/// A unimodular matrix from a product of elementary row operations.
fn unimodular(n: usize, ops: &[(usize, usize, i64)]) -> ZMatrix {
    let mut m = ZMatrix::identity(sft_core::algebra::Integers::ALL, n);
    for &(i, j, c) in ops {
        let (i, j) = (i % n, j % n);
        if i == j {
            continue;
        }
        let e = ZMatrix::identity(sft_core::algebra::Integers::ALL, n).with_entry(i, j, BigInt::from(c)).unwrap();
        m = e.mat_mul(&m).unwrap();
    }
    m
}

fn det(m: &ZMatrix) -> BigInt {
    det_poly(&m.to_poly().to_signed()).unwrap().constant_term()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn smith_decomposition_reconstructs(m in matrix_strategy(4)) {
        let dec = smith_decomposition(&m);
        prop_assert_eq!(dec.u.mat_mul(&m).unwrap().mat_mul(&dec.v).unwrap(), dec.d.clone());
        prop_assert!(det(&dec.u).abs().is_one());
        prop_assert!(det(&dec.v).abs().is_one());
        let sf = smith_normal_form(&m);
        for w in sf.divisors.windows(2) {
            prop_assert!((&w[1] % &w[0]).is_zero());
        }
        prop_assert!(sf.divisors.iter().all(|d| d.is_positive()));
    }

    #[test]
    fn smith_form_ignores_unimodular_changes(
        m in matrix_strategy(3),
        left in prop::collection::vec((0usize..3, 0usize..3, -3i64..=3), 0..6),
        right in prop::collection::vec((0usize..3, 0usize..3, -3i64..=3), 0..6),
    ) {
        let u = unimodular(m.rows(), &left);
        let v = unimodular(m.cols(), &right);
        let moved = u.mat_mul(&m).unwrap().mat_mul(&v).unwrap();
        prop_assert_eq!(smith_normal_form(&m), smith_normal_form(&moved));
    }

    #[test]
    fn determinant_is_multiplicative((a, b) in (1usize..=4).prop_flat_map(|n| (
        prop::collection::vec(-4i64..=4, n * n).prop_map(move |v| int_matrix(n, n, &v)),
        prop::collection::vec(-4i64..=4, n * n).prop_map(move |v| int_matrix(n, n, &v)),
    ))) {
        prop_assert_eq!(det(&a.mat_mul(&b).unwrap()), det(&a) * det(&b));
    }

    #[test]
    fn determinant_matches_cofactor_expansion(m in square_strategy(4)) {
        prop_assert_eq!(det(&m), cofactor(&m.row_vecs()));
    }

    #[test]
    fn semiring_laws_hold(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        for s in registered_semirings() {
            if let Err(v) = s.check_laws(&mut rng, 100) {
                prop_assert!(false, "{} fails {} at {}", v.semiring, v.law, v.witness);
            }
        }
    }
}

fn cofactor(rows: &[Vec<BigInt>]) -> BigInt {
    let n = rows.len();
    if n == 1 {
        return rows[0][0].clone();
    }
    (0..n)
        .map(|j| {
            let minor: Vec<Vec<BigInt>> = rows[1..].iter().map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, x)| x.clone()).collect()).collect();
            let term = &rows[0][j] * cofactor(&minor);
            if j % 2 == 0 { term } else { -term }
        })
        .sum()
}

#[test]
fn zero_times_infinity_is_zero() {
    let s = NatInfSemiring;
    assert_eq!(s.mul(&NatInf::zero(), &NatInf::Inf), NatInf::zero());
    assert_eq!(s.mul(&NatInf::Inf, &NatInf::zero()), NatInf::zero());
    assert_eq!(s.add(&NatInf::Inf, &NatInf::from(3u64)), NatInf::Inf);
    assert!(s.is_complete());
}
