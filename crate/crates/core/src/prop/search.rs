//! Bounded search for move sequences between pairs over ℤ₊[t].

use std::collections::HashMap;
use std::ops::ControlFlow;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::moves::{apply_move, Direction, PairMove, Side};
use super::traced::TracedMorphism;
use crate::algebra::{Matrix, Permutation, PolyMatrix, Polynomials, ZMatrix};
use crate::error::{Error, Result};
use crate::shift::{for_each_factorization, FactorLimits};

type Pair = TracedMorphism<Polynomials>;
type Move = PairMove<Polynomials>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PairBudget {
    pub max_steps: usize,
    pub max_inner_dim: usize,
    /// Bound on every coefficient of every intermediate matrix (raised to the endpoints' own).
    pub max_entry: u64,
    pub max_dashed: usize,
    /// Candidate pairs examined before giving up; factor slides can otherwise enumerate
    /// millions of witnesses on wide blocks.
    pub max_candidates: usize,
}

impl Default for PairBudget {
    fn default() -> Self {
        PairBudget { max_steps: 3, max_inner_dim: 3, max_entry: 3, max_dashed: 4, max_candidates: 20_000 }
    }
}

/// A replayable sequence of moves from `source` to `target`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairCertificate {
    pub source: Pair,
    pub target: Pair,
    pub moves: Vec<Move>,
}

impl PairCertificate {
    /// Replays the moves; `Err(i)` names the first failing move (`moves.len()` for an
    /// endpoint mismatch).
    pub fn verify(&self) -> std::result::Result<(), usize> {
        let mut cur = self.source.clone();
        for (i, mv) in self.moves.iter().enumerate() {
            cur = apply_move(&cur, mv).map_err(|_| i)?;
        }
        if cur == self.target {
            Ok(())
        } else {
            Err(self.moves.len())
        }
    }
}

type Key = (usize, usize, usize, Vec<Vec<BigInt>>);

fn raw_key(f: &Pair) -> Key {
    let x = f.underlying();
    (f.dashed(), x.rows(), x.cols(), x.entries().iter().map(|e| e.coeffs().to_vec()).collect())
}

fn permute(f: &Pair, p: &Permutation) -> Pair {
    apply_move(f, &PairMove::PermuteDashed(p.clone())).expect("dashed permutations always apply")
}

/// Least key over all dashed-wire permutations.
fn key(f: &Pair) -> Key {
    Permutation::all(f.dashed()).iter().map(|p| raw_key(&permute(f, p))).min().expect("at least one permutation")
}

/// Moves from `a` to `b` when they differ by a dashed permutation.
fn connect(a: &Pair, b: &Pair) -> Vec<Move> {
    if a == b {
        return Vec::new();
    }
    let p = Permutation::all(a.dashed())
        .into_iter()
        .find(|p| permute(a, p) == *b)
        .expect("equal keys differ by a dashed permutation");
    vec![PairMove::PermuteDashed(p)]
}

fn max_coeff(f: &Pair) -> BigInt {
    f.underlying().entries().iter().flat_map(|e| e.coeffs().iter().cloned()).max().unwrap_or_default()
}

enum Shape {
    Constant,
    TimesT,
}

// Reads a block as `A` or `t·A` with `A` over machine words.
fn split_block(b: &PolyMatrix) -> Option<(Shape, Vec<Vec<u64>>)> {
    let constant = b.entries().iter().all(|e| e.degree().map_or(true, |d| d == 0));
    let times_t = b.entries().iter().all(|e| e.is_zero() || (e.degree() == Some(1) && e.coeff(0) == BigInt::from(0)));
    let (shape, power) = if constant {
        (Shape::Constant, 0)
    } else if times_t {
        (Shape::TimesT, 1)
    } else {
        return None;
    };
    let rows = (0..b.rows())
        .map(|i| (0..b.cols()).map(|j| b.get(i, j).coeff(power).to_u64()).collect::<Option<Vec<_>>>())
        .collect::<Option<Vec<_>>>()?;
    Some((shape, rows))
}

fn poly(rows: &[Vec<u64>]) -> PolyMatrix {
    ZMatrix::from_u64_rows(rows).to_poly()
}

struct Explorer<'a> {
    budget: &'a PairBudget,
    bound: BigInt,
}

impl Explorer<'_> {
    // Candidate moves in a fixed order: contractions, expansions, factor slides.
    fn neighbors(&self, f: &Pair, emit: &mut dyn FnMut(Vec<Move>) -> ControlFlow<()>) -> ControlFlow<()> {
        let k = f.dashed();
        for wire in 0..k {
            for side in [Side::Input, Side::Output] {
                let mut moves = Vec::new();
                if wire != 0 {
                    moves.push(PairMove::PermuteDashed(Permutation::transposition(k, 0, wire)));
                }
                moves.push(PairMove::Contract(side));
                emit(moves)?;
            }
        }
        if k < self.budget.max_dashed {
            emit(vec![PairMove::Expand(Side::Input)])?;
            emit(vec![PairMove::Expand(Side::Output)])?;
        }
        self.slides(f, emit)
    }

    fn slides(&self, f: &Pair, emit: &mut dyn FnMut(Vec<Move>) -> ControlFlow<()>) -> ControlFlow<()> {
        let (k, x) = (f.dashed(), f.underlying());
        if k == 0 {
            return ControlFlow::Continue(());
        }
        let top_inner = self.budget.max_inner_dim.min(self.budget.max_dashed);
        // forward: top block = g·C_top with g of size k × q
        let top = x.block(0, k, 0, x.cols());
        if let Some((shape, a)) = split_block(&top) {
            for q in 1..=top_inner {
                let limits = FactorLimits { inner: q, max_entry: self.budget.max_entry, essential: true };
                for_each_factorization(&a, limits, &mut |r, s| {
                    let (g, mut c_top) = (poly(r), poly(s));
                    if matches!(shape, Shape::TimesT) {
                        c_top = c_top.times_t();
                    }
                    let bottom = x.block(k, x.rows(), 0, x.cols());
                    let core = stack(&c_top, &bottom);
                    emit(vec![PairMove::Slide { g, core: Some(core), direction: Direction::Forward }])
                })?;
            }
        }
        // backward: left block = C_left·g with g of size p × k
        let left = x.block(0, x.rows(), 0, k);
        if let Some((shape, a)) = split_block(&left) {
            for p in 1..=top_inner {
                let limits = FactorLimits { inner: p, max_entry: self.budget.max_entry, essential: true };
                for_each_factorization(&a, limits, &mut |r, s| {
                    let (mut c_left, g) = (poly(r), poly(s));
                    if matches!(shape, Shape::TimesT) {
                        c_left = c_left.times_t();
                    }
                    let right = x.block(0, x.rows(), k, x.cols());
                    let core = beside(&c_left, &right);
                    emit(vec![PairMove::Slide { g, core: Some(core), direction: Direction::Backward }])
                })?;
            }
        }
        ControlFlow::Continue(())
    }
}

fn stack(a: &PolyMatrix, b: &PolyMatrix) -> PolyMatrix {
    let cols = a.cols().max(b.cols());
    Matrix::from_fn(*a.spec(), a.rows() + b.rows(), cols, |i, j| {
        if i < a.rows() { a.get(i, j).clone() } else { b.get(i - a.rows(), j).clone() }
    })
}

fn beside(a: &PolyMatrix, b: &PolyMatrix) -> PolyMatrix {
    Matrix::from_fn(*a.spec(), a.rows(), a.cols() + b.cols(), |i, j| {
        if j < a.cols() { a.get(i, j).clone() } else { b.get(i, j - a.cols()).clone() }
    })
}

struct Node {
    rep: Pair,
    parent: Option<Key>,
    moves: Vec<Move>,
}

/// Breadth-first search for moves turning `f` into `g`. `None` means the budget ran out,
/// never that the pairs are inequivalent.
pub fn pair_equiv_bounded(f: &Pair, g: &Pair, budget: &PairBudget) -> Result<Option<PairCertificate>> {
    if f.n() != g.n() || f.m() != g.m() {
        return Err(Error::dims(format!("pairs of arity {}→{} and {}→{}", f.n(), f.m(), g.n(), g.m())));
    }
    let target = key(g);
    let bound = BigInt::from(budget.max_entry).max(max_coeff(f)).max(max_coeff(g));
    let explorer = Explorer { budget, bound };
    let mut seen: HashMap<Key, Node> = HashMap::new();
    let start = key(f);
    seen.insert(start.clone(), Node { rep: f.clone(), parent: None, moves: Vec::new() });
    let mut found = (start == target).then(|| start.clone());
    let mut frontier = vec![start];
    let mut level = 0;
    let mut examined = 0usize;
    while found.is_none() && level < budget.max_steps && !frontier.is_empty() {
        let mut next = Vec::new();
        for parent in std::mem::take(&mut frontier) {
            let rep = seen[&parent].rep.clone();
            let _ = explorer.neighbors(&rep, &mut |moves| {
                examined += 1;
                if examined > budget.max_candidates {
                    return ControlFlow::Break(());
                }
                let Ok(y) = moves.iter().try_fold(rep.clone(), |cur, mv| apply_move(&cur, mv)) else {
                    return ControlFlow::Continue(());
                };
                if max_coeff(&y) > explorer.bound || y.dashed() > budget.max_dashed {
                    return ControlFlow::Continue(());
                }
                let k = key(&y);
                if seen.contains_key(&k) {
                    return ControlFlow::Continue(());
                }
                seen.insert(k.clone(), Node { rep: y, parent: Some(parent.clone()), moves });
                if k == target {
                    found = Some(k);
                    return ControlFlow::Break(());
                }
                next.push(k);
                ControlFlow::Continue(())
            });
            if found.is_some() || examined > budget.max_candidates {
                break;
            }
        }
        if examined > budget.max_candidates {
            break;
        }
        frontier = next;
        level += 1;
    }
    let Some(end) = found else { return Ok(None) };
    let mut chunks = Vec::new();
    let mut k = end.clone();
    while let Some(node) = seen.get(&k) {
        chunks.push(node.moves.clone());
        match &node.parent {
            Some(p) => k = p.clone(),
            None => break,
        }
    }
    let mut moves: Vec<Move> = chunks.into_iter().rev().flatten().collect();
    moves.extend(connect(&seen[&end].rep, g));
    Ok(Some(PairCertificate { source: f.clone(), target: g.clone(), moves }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pair(rows: &[&[i64]], k: usize) -> Pair {
        TracedMorphism::new(ZMatrix::nat(rows).to_poly(), k).unwrap()
    }

    #[test]
    fn identical_pairs_need_no_moves() {
        let f = pair(&[&[1, 2], &[0, 1]], 1);
        let c = pair_equiv_bounded(&f, &f, &PairBudget::default()).unwrap().unwrap();
        assert!(c.moves.is_empty());
        assert_eq!(c.verify(), Ok(()));
    }

    #[test]
    fn swap_loop_is_an_expanded_identity() {
        let sigma = pair(&[&[0, 1], &[1, 0]], 1);
        let expanded = apply_move(&pair(&[&[1]], 0), &PairMove::Expand(Side::Input)).unwrap();
        let c = pair_equiv_bounded(&sigma, &expanded, &PairBudget::default()).unwrap().unwrap();
        assert!(c.moves.len() <= 2);
        assert_eq!(c.verify(), Ok(()));
        let back = pair_equiv_bounded(&sigma, &pair(&[&[1]], 0), &PairBudget::default()).unwrap().unwrap();
        assert_eq!(back.verify(), Ok(()));
    }

    #[test]
    fn factor_slide_relates_full_traces() {
        let a = TracedMorphism::full_trace(ZMatrix::nat(&[&[2]]).to_poly().times_t()).unwrap();
        let b = TracedMorphism::full_trace(ZMatrix::nat(&[&[1, 1], &[1, 1]]).to_poly().times_t()).unwrap();
        let c = pair_equiv_bounded(&a, &b, &PairBudget::default()).unwrap().unwrap();
        assert_eq!(c.moves.len(), 1);
        assert!(matches!(c.moves[0], PairMove::Slide { .. }));
        assert_eq!(c.verify(), Ok(()));
    }

    #[test]
    fn tampering_is_caught() {
        let a = TracedMorphism::full_trace(ZMatrix::nat(&[&[2]]).to_poly().times_t()).unwrap();
        let b = TracedMorphism::full_trace(ZMatrix::nat(&[&[1, 1], &[1, 1]]).to_poly().times_t()).unwrap();
        let mut c = pair_equiv_bounded(&a, &b, &PairBudget::default()).unwrap().unwrap();
        c.target = TracedMorphism::full_trace(ZMatrix::nat(&[&[1, 1], &[1, 0]]).to_poly().times_t()).unwrap();
        assert_eq!(c.verify(), Err(1));
    }

    #[test]
    fn arity_mismatch_is_an_error() {
        assert!(pair_equiv_bounded(&pair(&[&[1]], 0), &pair(&[&[1, 1]], 0), &PairBudget::default()).is_err());
    }
}
