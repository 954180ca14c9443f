//! Moves generating the equivalence on pairs: sliding a morphism around the loop, adding or
//! removing an identity loop, and permuting dashed wires.

use serde::{Deserialize, Serialize};

use super::traced::TracedMorphism;
use crate::algebra::{Matrix, Permutation, SemiringSpec};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Input,
    Output,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Forward,
    Backward,
}

impl Direction {
    pub fn flip(self) -> Self {
        match self {
            Direction::Forward => Direction::Backward,
            Direction::Backward => Direction::Forward,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum PairMove<S: SemiringSpec> {
    /// `[X, k] ↦ [(P⊕I)·X·(P⁻¹⊕I), k]`.
    PermuteDashed(Permutation),
    /// Adds a dashed identity loop in front of the first visible input (or output).
    Expand(Side),
    /// Inverse of [`PairMove::Expand`]; applies only on an exact pattern match.
    Contract(Side),
    /// With `g: q → p` (a `p × q` matrix) and core `C`:
    /// forward `[(g⊕I)·C, p] ↦ [C·(g⊕I), q]`, backward the reverse.
    /// Without a core, `g` must be a permutation and the core is solved for.
    Slide { g: Matrix<S>, core: Option<Matrix<S>>, direction: Direction },
}

fn pad<S: SemiringSpec>(g: &Matrix<S>, extra: usize) -> Result<Matrix<S>> {
    g.direct_sum(&Matrix::identity(g.spec().clone(), extra))
}

fn as_permutation<S: SemiringSpec>(g: &Matrix<S>) -> Option<Permutation> {
    if !g.is_square() {
        return None;
    }
    let s = g.spec();
    let mut images = vec![usize::MAX; g.cols()];
    for j in 0..g.cols() {
        for i in 0..g.rows() {
            let e = g.get(i, j);
            if *e == s.one() {
                if images[j] != usize::MAX {
                    return None;
                }
                images[j] = i;
            } else if !s.is_zero(e) {
                return None;
            }
        }
    }
    Permutation::new(images).ok()
}

impl<S: SemiringSpec> PairMove<S> {
    /// The move undoing this one (once it has applied).
    pub fn inverse(&self) -> Self {
        match self {
            PairMove::PermuteDashed(p) => PairMove::PermuteDashed(p.inverse()),
            PairMove::Expand(side) => PairMove::Contract(*side),
            PairMove::Contract(side) => PairMove::Expand(*side),
            PairMove::Slide { g, core, direction } => {
                PairMove::Slide { g: g.clone(), core: core.clone(), direction: direction.flip() }
            }
        }
    }

    pub fn describe(&self) -> String {
        match self {
            PairMove::PermuteDashed(p) => format!("permute dashed {p}"),
            PairMove::Expand(side) => format!("expand at {side:?}").to_lowercase(),
            PairMove::Contract(side) => format!("contract at {side:?}").to_lowercase(),
            PairMove::Slide { g, direction, .. } => {
                format!("slide {:?} g={}", direction, g.render_rows().join("; ")).to_lowercase()
            }
        }
    }
}

/// Applies one move, failing when the move does not fit the pair.
pub fn apply_move<S: SemiringSpec>(f: &TracedMorphism<S>, mv: &PairMove<S>) -> Result<TracedMorphism<S>> {
    let k = f.dashed();
    let x = f.underlying();
    let spec = x.spec().clone();
    match mv {
        PairMove::PermuteDashed(p) => {
            if p.len() != k {
                return Err(Error::MoveSite(format!("permutation of {} points on {k} dashed wires", p.len())));
            }
            let left = Matrix::permutation(spec.clone(), &p.direct_sum(&Permutation::identity(f.m())));
            let right = Matrix::permutation(spec, &p.inverse().direct_sum(&Permutation::identity(f.n())));
            TracedMorphism::new(left.mat_mul(x)?.mat_mul(&right)?, k)
        }
        PairMove::Expand(side) => {
            let id1 = Matrix::identity(spec.clone(), 1);
            let grown = id1.direct_sum(x)?;
            match side {
                Side::Input => {
                    if f.n() == 0 {
                        return Err(Error::MoveSite("expand at input needs a visible input".into()));
                    }
                    let t = Matrix::permutation(spec, &Permutation::transposition(k + 1 + f.n(), 0, k + 1));
                    TracedMorphism::new(grown.mat_mul(&t)?, k + 1)
                }
                Side::Output => {
                    if f.m() == 0 {
                        return Err(Error::MoveSite("expand at output needs a visible output".into()));
                    }
                    let t = Matrix::permutation(spec, &Permutation::transposition(k + 1 + f.m(), 0, k + 1));
                    TracedMorphism::new(t.mat_mul(&grown)?, k + 1)
                }
            }
        }
        PairMove::Contract(side) => {
            if k == 0 {
                return Err(Error::MoveSite("nothing dashed to contract".into()));
            }
            let y = match side {
                Side::Input => {
                    if f.n() == 0 {
                        return Err(Error::MoveSite("contract at input needs a visible input".into()));
                    }
                    let t = Matrix::permutation(spec.clone(), &Permutation::transposition(x.cols(), 0, k));
                    x.mat_mul(&t)?
                }
                Side::Output => {
                    if f.m() == 0 {
                        return Err(Error::MoveSite("contract at output needs a visible output".into()));
                    }
                    let t = Matrix::permutation(spec.clone(), &Permutation::transposition(x.rows(), 0, k));
                    t.mat_mul(x)?
                }
            };
            // y must be id₁ ⊕ core
            let (r, c) = (y.rows(), y.cols());
            let ok = *y.get(0, 0) == spec.one()
                && (1..c).all(|j| spec.is_zero(y.get(0, j)))
                && (1..r).all(|i| spec.is_zero(y.get(i, 0)));
            if !ok {
                return Err(Error::MoveSite(format!("no identity loop to contract at the {side:?} side").to_lowercase()));
            }
            TracedMorphism::new(y.block(1, r, 1, c), k - 1)
        }
        PairMove::Slide { g, core, direction } => {
            let (p, q) = (g.rows(), g.cols());
            match direction {
                Direction::Forward => {
                    // x = (g⊕I_m)·C with p dashed; result C·(g⊕I_n) with q dashed
                    if k != p {
                        return Err(Error::MoveSite(format!("forward slide needs {p} dashed wires, pair has {k}")));
                    }
                    let core = match core {
                        Some(c) => c.clone(),
                        None => {
                            let perm = as_permutation(g)
                                .ok_or_else(|| Error::MoveSite("slide without a core needs a permutation".into()))?;
                            Matrix::permutation(spec.clone(), &perm.inverse().direct_sum(&Permutation::identity(f.m())))
                                .mat_mul(x)?
                        }
                    };
                    if core.rows() != q + f.m() || core.cols() != p + f.n() {
                        return Err(Error::MoveSite("slide core has the wrong shape".into()));
                    }
                    if pad(g, f.m())?.mat_mul(&core)? != *x {
                        return Err(Error::MoveSite("pair is not (g ⊕ id)·core".into()));
                    }
                    TracedMorphism::new(core.mat_mul(&pad(g, f.n())?)?, q)
                }
                Direction::Backward => {
                    // x = C·(g⊕I_n) with q dashed; result (g⊕I_m)·C with p dashed
                    if k != q {
                        return Err(Error::MoveSite(format!("backward slide needs {q} dashed wires, pair has {k}")));
                    }
                    let core = match core {
                        Some(c) => c.clone(),
                        None => {
                            let perm = as_permutation(g)
                                .ok_or_else(|| Error::MoveSite("slide without a core needs a permutation".into()))?;
                            x.mat_mul(&Matrix::permutation(
                                spec.clone(),
                                &perm.inverse().direct_sum(&Permutation::identity(f.n())),
                            ))?
                        }
                    };
                    if core.rows() != q + f.m() || core.cols() != p + f.n() {
                        return Err(Error::MoveSite("slide core has the wrong shape".into()));
                    }
                    if core.mat_mul(&pad(g, f.n())?)? != *x {
                        return Err(Error::MoveSite("pair is not core·(g ⊕ id)".into()));
                    }
                    TracedMorphism::new(pad(g, f.m())?.mat_mul(&core)?, p)
                }
            }
        }
    }
}
