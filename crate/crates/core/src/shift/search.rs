//! Bidirectional level-synchronous breadth-first search on conjugacy classes of matrices.

use std::collections::HashMap;
use std::ops::ControlFlow;

use super::small::{self, Small};
use super::steps::Step;
use crate::algebra::{Permutation, ZMatrix};
use crate::error::{Error, Result};
use crate::prop::Direction;

/// Search limits. Intermediate matrices stay within `max_size` and within the larger of
/// `max_entry` and the endpoints' largest entry.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SearchBudget {
    pub max_inner_dim: usize,
    pub max_entry: u64,
    pub max_size: usize,
    pub max_steps: usize,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { max_inner_dim: 4, max_entry: 3, max_size: 6, max_steps: 4 }
    }
}

/// A step on machine-word matrices, converted to [`Step`] when a path is found.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum RawStep {
    Factor { r: Small, s: Small, direction: Direction },
    Expand(usize),
    Contract(usize),
    Permute(Vec<usize>),
}

impl RawStep {
    fn inverse(&self) -> RawStep {
        match self {
            RawStep::Factor { r, s, direction } => RawStep::Factor { r: r.clone(), s: s.clone(), direction: direction.flip() },
            RawStep::Expand(i) => RawStep::Contract(*i),
            RawStep::Contract(i) => RawStep::Expand(*i),
            RawStep::Permute(p) => RawStep::Permute(small::invert(p)),
        }
    }

    pub(crate) fn to_step(&self) -> Step {
        match self {
            RawStep::Factor { r, s, direction } => Step::Factor {
                direction: *direction,
                r: ZMatrix::from_u64_rows(r).to_poly(),
                s: ZMatrix::from_u64_rows(s).to_poly(),
            },
            RawStep::Expand(i) => Step::ExpandRow { row: *i },
            RawStep::Contract(i) => Step::ContractRow { row: *i },
            RawStep::Permute(p) => Step::Permute { perm: Permutation::new(p.clone()).expect("search permutations are valid") },
        }
    }
}

pub(crate) type Emit<'a> = dyn FnMut(Small, Vec<RawStep>) -> ControlFlow<()> + 'a;

pub(crate) trait MoveSystem {
    /// Emits neighbors of `x` with the steps leading from `x` to each, cheapest moves first.
    fn neighbors(&self, x: &Small, emit: &mut Emit<'_>) -> ControlFlow<()>;
    /// Steps from `a` to `b = conjugate(a, p)`.
    fn connect(&self, a: &Small, p: Vec<usize>) -> Vec<RawStep>;
}

struct Node {
    rep: Small,
    parent: Option<Small>,
    /// Forward side: steps from the parent to `rep`. Backward side: steps from `rep` to the parent.
    steps: Vec<RawStep>,
}

fn key(x: &Small) -> Small {
    small::canonical(x).0
}

fn connect_reps<M: MoveSystem + ?Sized>(system: &M, a: &Small, b: &Small) -> Vec<RawStep> {
    if a == b {
        return Vec::new();
    }
    let p = small::conjugating_perm(a, b).expect("equal canonical forms are conjugate");
    system.connect(a, p)
}

/// Returns the steps of a path from `m` to `n`, or `None` when the budget is exhausted.
pub(crate) fn bidirectional<M: MoveSystem + ?Sized>(system: &M, m: &Small, n: &Small, max_steps: usize) -> Option<Vec<RawStep>> {
    let (km, kn) = (key(m), key(n));
    if km == kn {
        return Some(connect_reps(system, m, n));
    }
    let mut sides: [HashMap<Small, Node>; 2] = [HashMap::new(), HashMap::new()];
    sides[0].insert(km.clone(), Node { rep: m.clone(), parent: None, steps: Vec::new() });
    sides[1].insert(kn.clone(), Node { rep: n.clone(), parent: None, steps: Vec::new() });
    let mut frontiers = [vec![km], vec![kn]];

    // levels expanded per side; ties go to the side that has done less, since the factor
    // neighbors skip inessential witnesses and so are not symmetric
    let mut levels = [0usize; 2];
    for _ in 0..max_steps {
        let side = match (frontiers[0].is_empty(), frontiers[1].is_empty()) {
            (true, true) => return None,
            (true, false) => 1,
            (false, true) => 0,
            _ if frontiers[0].len() == frontiers[1].len() => usize::from(levels[1] < levels[0]),
            _ => usize::from(frontiers[1].len() < frontiers[0].len()),
        };
        levels[side] += 1;
        let (this, other) = if side == 0 {
            let (a, b) = sides.split_at_mut(1);
            (&mut a[0], &b[0])
        } else {
            let (a, b) = sides.split_at_mut(1);
            (&mut b[0], &a[0])
        };
        let mut next = Vec::new();
        let mut meet: Option<Small> = None;
        for parent_key in std::mem::take(&mut frontiers[side]) {
            let rep = this[&parent_key].rep.clone();
            let _ = system.neighbors(&rep, &mut |y, steps| {
                let k = key(&y);
                if this.contains_key(&k) {
                    return ControlFlow::Continue(());
                }
                let steps = if side == 0 { steps } else { steps.iter().rev().map(RawStep::inverse).collect() };
                this.insert(k.clone(), Node { rep: y, parent: Some(parent_key.clone()), steps });
                if other.contains_key(&k) {
                    meet = Some(k);
                    return ControlFlow::Break(());
                }
                next.push(k);
                ControlFlow::Continue(())
            });
            if meet.is_some() {
                break;
            }
        }
        if let Some(k) = meet {
            return Some(assemble(system, &sides[0], &sides[1], &k));
        }
        frontiers[side] = next;
    }
    None
}

fn assemble<M: MoveSystem + ?Sized>(system: &M, fwd: &HashMap<Small, Node>, bwd: &HashMap<Small, Node>, meet: &Small) -> Vec<RawStep> {
    let mut head: Vec<Vec<RawStep>> = Vec::new();
    let mut k = meet.clone();
    while let Some(node) = fwd.get(&k) {
        head.push(node.steps.clone());
        match &node.parent {
            Some(p) => k = p.clone(),
            None => break,
        }
    }
    let mut path: Vec<RawStep> = head.into_iter().rev().flatten().collect();
    path.extend(connect_reps(system, &fwd[meet].rep, &bwd[meet].rep));
    let mut k = meet.clone();
    while let Some(node) = bwd.get(&k) {
        path.extend(node.steps.iter().cloned());
        match &node.parent {
            Some(p) => k = p.clone(),
            None => break,
        }
    }
    path
}

/// Converts a square ℤ₊ matrix for the search, rejecting anything else.
pub(crate) fn to_small(m: &ZMatrix) -> Result<Small> {
    m.require_square()?;
    m.to_u64_rows().ok_or_else(|| Error::NotInSemiring { entry: "negative or oversized entry".into(), semiring: "zplus".into() })
}

pub(crate) fn entry_bound(budget: &SearchBudget, a: &Small, b: &Small) -> u64 {
    budget.max_entry.max(small::max_entry(a)).max(small::max_entry(b))
}
