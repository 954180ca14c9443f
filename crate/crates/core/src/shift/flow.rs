//! Bounded flow-equivalence search: factor steps plus row expansion and contraction.

use std::ops::ControlFlow;

use super::certificate::{CertificateKind, MoveCertificate};
use super::search::{bidirectional, entry_bound, to_small, Emit, MoveSystem, RawStep, SearchBudget};
use super::small::{self, Small};
use super::sse::SseMoves;
use crate::algebra::{RingKind, ZMatrix};
use crate::error::Result;

/// Row expansion on machine-word matrices; mirrors [`super::steps::ps_expand`].
pub(crate) fn expand_small(a: &Small, row: usize) -> Small {
    let n = a.len();
    let mut swap: Vec<usize> = (0..n).collect();
    swap.swap(0, row);
    let c = small::conjugate(a, &swap);
    let mut out = vec![vec![0; n + 1]; n + 1];
    out[0][n] = 1;
    for i in 1..n {
        out[i][..n].copy_from_slice(&c[i]);
    }
    out[n][..n].copy_from_slice(&c[0]);
    out
}

/// Contraction at row 0 when the pattern matches exactly.
fn contract_front(x: &Small) -> Option<Small> {
    let size = x.len();
    if size < 2 {
        return None;
    }
    let n = size - 1;
    let first_ok = x[0][..n].iter().all(|&v| v == 0) && x[0][n] == 1;
    let col_ok = (1..=n).all(|i| x[i][n] == 0);
    if !(first_ok && col_ok) {
        return None;
    }
    let mut out = vec![vec![0; n]; n];
    out[0].copy_from_slice(&x[n][..n]);
    for i in 1..n {
        out[i].copy_from_slice(&x[i][..n]);
    }
    Some(out)
}

pub(crate) struct FlowMoves {
    sse: SseMoves,
}

impl FlowMoves {
    fn contractions(&self, x: &Small, emit: &mut Emit<'_>) -> ControlFlow<()> {
        let k = x.len();
        // a contractible conjugate has some v with row v = e_w and column w = e_v
        for v in 0..k {
            for w in 0..k {
                if v == w || (0..k).any(|j| x[v][j] != u64::from(j == w)) || (0..k).any(|i| x[i][w] != u64::from(i == v)) {
                    continue;
                }
                let mut p: Vec<usize> = vec![usize::MAX; k];
                p[v] = 0;
                p[w] = k - 1;
                let mut next = 1;
                for slot in p.iter_mut().filter(|s| **s == usize::MAX) {
                    *slot = next;
                    next += 1;
                }
                let y = small::conjugate(x, &p);
                let Some(c) = contract_front(&y) else { continue };
                let mut steps = Vec::new();
                if p.iter().enumerate().any(|(i, &j)| i != j) {
                    steps.push(RawStep::Permute(p));
                }
                steps.push(RawStep::Contract(0));
                emit(c, steps)?;
            }
        }
        ControlFlow::Continue(())
    }
}

impl MoveSystem for FlowMoves {
    fn neighbors(&self, x: &Small, emit: &mut Emit<'_>) -> ControlFlow<()> {
        self.contractions(x, emit)?;
        if x.len() < self.sse.budget.max_size {
            for row in 0..x.len() {
                emit(expand_small(x, row), vec![RawStep::Expand(row)])?;
            }
        }
        self.sse.factor_neighbors(x, emit)
    }

    fn connect(&self, _a: &Small, p: Vec<usize>) -> Vec<RawStep> {
        vec![RawStep::Permute(p)]
    }
}

/// Bounded search for a flow-equivalence path.
pub fn flow_search(m: &ZMatrix, n: &ZMatrix, budget: &SearchBudget) -> Result<Option<MoveCertificate>> {
    let (a, b) = (to_small(m)?, to_small(n)?);
    // an SSE path is already a flow path, and that search is narrower
    if let Some(cert) = super::sse::sse_search(m, n, budget)? {
        return Ok(Some(MoveCertificate { kind: CertificateKind::Flow, ..cert }));
    }
    let system = FlowMoves { sse: SseMoves { budget: *budget, entry_bound: entry_bound(budget, &a, &b) } };
    Ok(bidirectional(&system, &a, &b, budget.max_steps).map(|path| MoveCertificate {
        kind: CertificateKind::Flow,
        ring: RingKind::ZPlus,
        source: m.to_poly(),
        target: n.to_poly(),
        steps: path.iter().map(RawStep::to_step).collect(),
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shift::steps::ps_expand;

    #[test]
    fn small_expansion_matches_generic() {
        let m = ZMatrix::nat(&[&[1, 2, 0], &[0, 1, 3], &[1, 0, 1]]);
        let a = m.to_u64_rows().unwrap();
        for row in 0..3 {
            let e = ps_expand(&m, row).unwrap();
            assert_eq!(expand_small(&a, row), e.to_u64_rows().unwrap());
        }
    }

    #[test]
    fn contraction_recovers_expansion_up_to_conjugacy() {
        let a: Small = vec![vec![1, 2], vec![3, 0]];
        let moves = FlowMoves { sse: SseMoves { budget: SearchBudget::default(), entry_bound: 3 } };
        for row in 0..2 {
            let mut found = false;
            let _ = moves.contractions(&expand_small(&a, row), &mut |c, _| {
                found |= small::canonical(&c).0 == small::canonical(&a).0;
                ControlFlow::Continue(())
            });
            assert!(found);
        }
    }

    #[test]
    fn expansions_are_found_and_verified() {
        let b = SearchBudget::default();
        let m = ZMatrix::nat(&[&[1, 1], &[1, 0]]);
        for row in 0..2 {
            let e = ps_expand(&m, row).unwrap();
            let cert = flow_search(&m, &e, &b).unwrap().unwrap();
            assert!(crate::shift::verify_certificate(&cert).ok);
        }
        let two = ZMatrix::nat(&[&[2]]);
        let cert = flow_search(&two, &ZMatrix::nat(&[&[0, 1], &[2, 0]]), &b).unwrap().unwrap();
        assert_eq!(cert.steps.len(), 1);
        assert!(flow_search(&two, &ZMatrix::nat(&[&[3]]), &b).unwrap().is_none());
    }

    #[test]
    fn inessential_split_is_found_from_either_end() {
        // [[0,2],[0,0]] = [[1],[0]]·[[0,2]] reduces to [[0]], but [[0]] has no essential factorization back
        let b = SearchBudget { max_steps: 2, ..SearchBudget::default() };
        let (z, n) = (ZMatrix::nat(&[&[0]]), ZMatrix::nat(&[&[0, 2], &[0, 0]]));
        for (x, y) in [(&z, &n), (&n, &z)] {
            let cert = flow_search(x, y, &b).unwrap().unwrap();
            assert!(crate::shift::verify_certificate(&cert).ok);
            assert!(crate::shift::sse_search(x, y, &b).unwrap().is_some());
        }
    }
}
