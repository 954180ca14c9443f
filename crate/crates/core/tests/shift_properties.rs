mod common;

use num_bigint::BigInt;
use proptest::prelude::*;
use rand::Rng;

use sft_core::algebra::{RingKind, ZMatrix};
use sft_core::format::{parse_matrix_document, render_matrix_document};
use sft_core::invariants::{
    bowen_franks, compare, dimension_module, finite_field_fixed_count, periodic_point_count, spectrum_away_from_zero, zeta_poly,
    EquivVerdict,
};
use sft_core::shift::{
    apply_step, elementary_sse, flow_search, lift_to_polynomial, ps_expand, sse_search, verify_certificate, MoveCertificate, SearchBudget,
};
use sft_core::weighted::{count_fixed_points, interpret_matrix, registered_monoids, WeightedModel};

fn small_budget() -> SearchBudget {
    SearchBudget { max_steps: 2, ..SearchBudget::default() }
}

fn essential(m: &ZMatrix) -> bool {
    let rows = m.to_u64_rows().unwrap();
    rows.iter().all(|r| r.iter().any(|&x| x > 0)) && (0..m.cols()).all(|j| rows.iter().any(|r| r[j] > 0))
}

/// Closed walks of length `k`, counted one walk at a time.
fn closed_walks(m: &ZMatrix, k: usize) -> BigInt {
    let rows = m.to_u64_rows().unwrap();
    fn walk(rows: &[Vec<u64>], start: usize, at: usize, left: usize) -> BigInt {
        if left == 0 {
            return BigInt::from((at == start) as u8);
        }
        (0..rows.len()).filter(|&j| rows[at][j] > 0).map(|j| BigInt::from(rows[at][j]) * walk(rows, start, j, left - 1)).sum()
    }
    (0..rows.len()).map(|s| walk(&rows, s, s, k)).sum()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn sylvester_invariants_agree(seed in any::<u64>()) {
        let mut r = common::rng(seed);
        let (rm, sm) = common::factor_pair(&mut r, 3, 3);
        let (rs, sr) = (rm.mat_mul(&sm).unwrap(), sm.mat_mul(&rm).unwrap());
        prop_assert_eq!(zeta_poly(&rs).unwrap(), zeta_poly(&sr).unwrap());
        prop_assert_eq!(spectrum_away_from_zero(&rs).unwrap(), spectrum_away_from_zero(&sr).unwrap());
        prop_assert_eq!(bowen_franks(&rs).unwrap(), bowen_franks(&sr).unwrap());
        for p in [2u64, 3, 5, 7] {
            for lambda in 1..p {
                prop_assert_eq!(finite_field_fixed_count(&rs, p, lambda).unwrap(), finite_field_fixed_count(&sr, p, lambda).unwrap());
            }
        }
    }

    #[test]
    fn expansion_preserves_flow_invariants(seed in any::<u64>()) {
        let mut r = common::rng(seed);
        let m = common::square(&mut r, 3, 2);
        let ex = ps_expand(&m, r.gen_range(0..m.rows())).unwrap();
        prop_assert_eq!(bowen_franks(&m).unwrap(), bowen_franks(&ex).unwrap());
        for model in registered_monoids().into_iter().map(WeightedModel::with_identity) {
            prop_assert_eq!(count_fixed_points(&m, &model).unwrap(), count_fixed_points(&ex, &model).unwrap());
        }
    }

    #[test]
    fn interpretation_matches_brute_force(seed in any::<u64>()) {
        let mut r = common::rng(seed);
        let model = common::monoid_and_hom(&mut r);
        let m = common::square(&mut r, 3, 2);
        prop_assert_eq!(interpret_matrix(&m, &model).unwrap(), count_fixed_points(&m, &model).unwrap());
    }

    #[test]
    fn periodic_points_count_closed_walks(seed in any::<u64>(), k in 1u32..=5) {
        let mut r = common::rng(seed);
        let m = common::square(&mut r, 3, 2);
        prop_assert_eq!(periodic_point_count(&m, k).unwrap(), closed_walks(&m, k as usize));
    }

    #[test]
    fn dimension_module_specializes_to_bowen_franks(seed in any::<u64>()) {
        let mut r = common::rng(seed);
        let m = common::square(&mut r, 4, 3);
        prop_assert_eq!(dimension_module(&m).unwrap().specialize_at_one(), bowen_franks(&m).unwrap());
    }

    #[test]
    fn elementary_steps_are_found_and_sound(seed in any::<u64>()) {
        let mut r = common::rng(seed);
        let (rm, sm) = common::factor_pair(&mut r, 3, 2);
        prop_assume!(essential(&rm) && essential(&sm));
        let (rs, sr) = (rm.mat_mul(&sm).unwrap(), sm.mat_mul(&rm).unwrap());
        let step = elementary_sse(&rs, &sr, &SearchBudget::default()).unwrap();
        prop_assert!(step.is_some(), "no step from {:?} to {:?}", rs.render_rows(), sr.render_rows());
        let step = step.unwrap();
        prop_assert_eq!(apply_step(&rs.to_poly(), &step.to_step()).unwrap(), sr.to_poly());
    }

    #[test]
    fn found_certificates_are_sound(seed in any::<u64>()) {
        let mut r = common::rng(seed);
        let (rm, sm) = common::factor_pair(&mut r, 2, 2);
        let (rs, sr) = (rm.mat_mul(&sm).unwrap(), sm.mat_mul(&rm).unwrap());
        let Some(cert) = sse_search(&rs, &sr, &small_budget()).unwrap() else { return Ok(()) };
        prop_assert!(verify_certificate(&cert).ok);
        prop_assert_eq!(&cert.source, &rs.to_poly());
        prop_assert_eq!(&cert.target, &sr.to_poly());

        // the same path, read over Z+[t]
        let lifted = lift_to_polynomial(&cert).unwrap();
        prop_assert!(verify_certificate(&lifted).ok);
        prop_assert_eq!(lifted.ring, RingKind::ZPlusT);

        // every SSE is a flow equivalence
        let flow = flow_search(&rs, &sr, &small_budget()).unwrap();
        prop_assert!(flow.map(|c| verify_certificate(&c).ok).unwrap_or(false));

        // certificates survive their JSON form
        let back = MoveCertificate::from_json(&cert.to_json()).unwrap();
        prop_assert_eq!(back, cert);
    }

    #[test]
    fn equivalent_verdicts_have_agreeing_tables(seed in any::<u64>(), flow in any::<bool>()) {
        let mut r = common::rng(seed);
        let m = common::square(&mut r, 2, 2);
        let n = if flow { ps_expand(&m, 0).unwrap() } else { common::square(&mut r, 2, 2) };
        let relation = if flow { "flow" } else { "sse" };
        match compare(&m, &n, relation, &small_budget()).unwrap() {
            EquivVerdict::Equivalent { certificate, table } => {
                prop_assert!(certificate.verify().ok);
                for row in table {
                    if let (Ok(a), Ok(b)) = (&row.on_m, &row.on_n) {
                        prop_assert_eq!(a, b, "{} disagrees", row.name);
                    }
                }
            }
            EquivVerdict::Distinguished { on_m, on_n, .. } => prop_assert_ne!(on_m, on_n),
            EquivVerdict::Unknown { .. } => {}
        }
    }

    #[test]
    fn matrix_documents_round_trip(seed in any::<u64>(), with_t in any::<bool>()) {
        let mut r = common::rng(seed);
        let (n, c) = (r.gen_range(1..=4), r.gen_range(1..=4));
        let m = common::nat(&mut r, n, c, 5);
        let (m, ring) = if with_t { (m.to_poly().times_t(), RingKind::ZPlusT) } else { (m.to_poly(), RingKind::ZPlus) };
        prop_assert_eq!(parse_matrix_document(&render_matrix_document(&m), ring).unwrap(), m);
    }
}
