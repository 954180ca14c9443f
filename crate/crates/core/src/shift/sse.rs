//! Elementary strong shift equivalence and bounded SSE paths.

use std::ops::ControlFlow;

use super::certificate::{CertificateKind, MoveCertificate};
use super::factor::{for_each_factorization, FactorLimits};
use super::search::{bidirectional, entry_bound, to_small, Emit, MoveSystem, RawStep, SearchBudget};
use super::small::{self, Small};
use super::steps::Step;
use crate::algebra::{RingKind, ZMatrix};
use crate::error::{Error, Result};
use crate::prop::Direction;

/// Witnesses `source = R·S`, `target = S·R`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SseStep {
    pub r: ZMatrix,
    pub s: ZMatrix,
}

impl SseStep {
    pub fn source(&self) -> ZMatrix {
        self.r.mat_mul(&self.s).expect("witness shapes agree")
    }

    pub fn target(&self) -> ZMatrix {
        self.s.mat_mul(&self.r).expect("witness shapes agree")
    }

    pub fn to_step(&self) -> Step {
        Step::Factor { direction: Direction::Forward, r: self.r.to_poly(), s: self.s.to_poly() }
    }

    /// The same step read over ℤ₊[t] on `(tM, tN)`: witnesses `(tR, S)`.
    pub fn lift(&self) -> Step {
        Step::Factor { direction: Direction::Forward, r: self.r.to_poly().times_t(), s: self.s.to_poly() }
    }
}

/// Finds `R`, `S` with `m = RS` and `n = SR`, entries at most `budget.max_entry`, or `None`.
///
/// The inner dimension is the size of `n`, so nothing is tried when that exceeds
/// `budget.max_inner_dim`. Exhaustion is only conclusive within the budget.
pub fn elementary_sse(m: &ZMatrix, n: &ZMatrix, budget: &SearchBudget) -> Result<Option<SseStep>> {
    let (a, b) = (to_small(m)?, to_small(n)?);
    if a == b {
        let id = ZMatrix::identity(crate::algebra::Integers::NATURAL, a.len());
        return Ok(Some(SseStep { r: m.to_natural()?, s: id }));
    }
    Ok(elementary_small(&a, &b, budget).map(|(r, s)| SseStep { r: ZMatrix::from_u64_rows(&r), s: ZMatrix::from_u64_rows(&s) }))
}

fn elementary_small(a: &Small, b: &Small, budget: &SearchBudget) -> Option<(Small, Small)> {
    let inner = b.len();
    if inner == 0 || a.is_empty() || inner > budget.max_inner_dim {
        return None;
    }
    // tr((RS)^k) = tr((SR)^k)
    if small::trace(a) != small::trace(b) || small::trace(&small::mul(a, a)) != small::trace(&small::mul(b, b)) {
        return None;
    }
    // if b has no zero row or column, every witness is essential
    let essential = !small::has_zero_row_or_col(b);
    let limits = FactorLimits { inner, max_entry: budget.max_entry, essential };
    let mut found = None;
    let _ = for_each_factorization(a, limits, &mut |r, s| {
        let sr = small::mul(s, r);
        if let Some(p) = small::conjugating_perm(&sr, b) {
            // b = P·SR·P⁻¹ = (P S)(R P⁻¹)
            let pm = small::perm_matrix(&p);
            let pinv = small::perm_matrix(&small::invert(&p));
            found = Some((small::mul(r, &pinv), small::mul(&pm, s)));
            return ControlFlow::Break(());
        }
        ControlFlow::Continue(())
    });
    found
}

pub(crate) struct SseMoves {
    pub budget: SearchBudget,
    pub entry_bound: u64,
}

impl SseMoves {
    pub(crate) fn factor_neighbors(&self, x: &Small, emit: &mut Emit<'_>) -> ControlFlow<()> {
        let top = self.budget.max_inner_dim.min(self.budget.max_size);
        for inner in 1..=top {
            let limits = FactorLimits { inner, max_entry: self.budget.max_entry, essential: true };
            for_each_factorization(x, limits, &mut |r, s| {
                let y = small::mul(s, r);
                if small::max_entry(&y) > self.entry_bound {
                    return ControlFlow::Continue(());
                }
                emit(y, vec![RawStep::Factor { r: r.clone(), s: s.clone(), direction: Direction::Forward }])
            })?;
        }
        ControlFlow::Continue(())
    }
}

impl MoveSystem for SseMoves {
    fn neighbors(&self, x: &Small, emit: &mut Emit<'_>) -> ControlFlow<()> {
        self.factor_neighbors(x, emit)
    }

    fn connect(&self, a: &Small, p: Vec<usize>) -> Vec<RawStep> {
        // a = P⁻¹·(P a), and (P a)·P⁻¹ = conjugate(a, p)
        let r = small::perm_matrix(&small::invert(&p));
        let s = small::mul(&small::perm_matrix(&p), a);
        vec![RawStep::Factor { r, s, direction: Direction::Forward }]
    }
}

/// Bounded search for a path of elementary SSE steps.
pub fn sse_search(m: &ZMatrix, n: &ZMatrix, budget: &SearchBudget) -> Result<Option<MoveCertificate>> {
    let (a, b) = (to_small(m)?, to_small(n)?);
    let system = SseMoves { budget: *budget, entry_bound: entry_bound(budget, &a, &b) };
    Ok(bidirectional(&system, &a, &b, budget.max_steps).map(|path| MoveCertificate {
        kind: CertificateKind::Sse,
        ring: RingKind::ZPlus,
        source: m.to_poly(),
        target: n.to_poly(),
        steps: path.iter().map(RawStep::to_step).collect(),
    }))
}

/// Re-reads an SSE certificate over ℤ₊[t]: endpoints `tM`, `tN`, witnesses `(tR, S)`.
pub fn lift_to_polynomial(cert: &MoveCertificate) -> Result<MoveCertificate> {
    if cert.kind != CertificateKind::Sse {
        return Err(Error::StepRejected("only SSE certificates lift to Z+[t]".into()));
    }
    let steps = cert
        .steps
        .iter()
        .map(|s| match s {
            Step::Factor { direction, r, s } => Ok(match direction {
                Direction::Forward => Step::Factor { direction: *direction, r: r.times_t(), s: s.clone() },
                Direction::Backward => Step::Factor { direction: *direction, r: r.clone(), s: s.times_t() },
            }),
            other => Err(Error::StepRejected(format!("cannot lift a {} step", other.type_name()))),
        })
        .collect::<Result<Vec<_>>>()?;
    let widen = |m: &crate::algebra::PolyMatrix| m.times_t();
    Ok(MoveCertificate {
        kind: CertificateKind::Sse,
        ring: RingKind::ZPlusT,
        source: widen(&cert.source),
        target: widen(&cert.target),
        steps,
    })
}
