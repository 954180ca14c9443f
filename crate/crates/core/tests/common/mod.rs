//! Random instances and checks shared by the acceptance run and the property suites.
#![allow(dead_code)]

use num_bigint::BigInt;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

use sft_core::algebra::{Integers, IntPoly, Matrix, NatInf, NatInfSemiring, Permutation, PolyMatrix, Polynomials, ZMatrix};
use sft_core::prop::{apply_move, Direction, PairMove, Side, TracedMorphism};
use sft_core::weighted::{registered_monoids, FiniteMonoid, WeightedModel, WeightedMorphism};

pub type Pair = TracedMorphism<Polynomials>;

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn nat(rng: &mut StdRng, rows: usize, cols: usize, max: u64) -> ZMatrix {
    Matrix::from_fn(Integers::NATURAL, rows, cols, |_, _| BigInt::from(rng.gen_range(0..=max)))
}

pub fn square(rng: &mut StdRng, max_size: usize, max: u64) -> ZMatrix {
    let n = rng.gen_range(1..=max_size);
    nat(rng, n, n, max)
}

/// A random square matrix with no zero row or column, so expansions and factorizations stay essential.
pub fn essential_square(rng: &mut StdRng, max_size: usize, max: u64) -> ZMatrix {
    loop {
        let m = square(rng, max_size, max);
        let rows = m.to_u64_rows().unwrap();
        let n = rows.len();
        let zero_row = rows.iter().any(|r| r.iter().all(|&x| x == 0));
        let zero_col = (0..n).any(|j| rows.iter().all(|r| r[j] == 0));
        if !zero_row && !zero_col {
            return m;
        }
    }
}

/// `(R, S)` with `R` of size `n × r` and `S` of size `r × n`.
pub fn factor_pair(rng: &mut StdRng, max_dim: usize, max: u64) -> (ZMatrix, ZMatrix) {
    let n = rng.gen_range(1..=max_dim);
    let r = rng.gen_range(1..=max_dim);
    (nat(rng, n, r, max), nat(rng, r, n, max))
}

pub fn monoid_and_hom(rng: &mut StdRng) -> WeightedModel {
    let monoids: Vec<FiniteMonoid> = registered_monoids();
    let x = monoids.choose(rng).unwrap().clone();
    let homs = x.all_homs();
    let h = homs.choose(rng).unwrap().clone();
    WeightedModel::new(x, h).unwrap()
}

pub fn weighted(rng: &mut StdRng, base: usize, n: usize, m: usize, max: u64) -> WeightedMorphism {
    let (rows, cols) = (base.pow(m as u32), base.pow(n as u32));
    let data = (0..rows * cols).map(|_| NatInf::from(rng.gen_range(0..=max))).collect();
    WeightedMorphism::new(base, n, m, Matrix::new(NatInfSemiring, rows, cols, data).unwrap()).unwrap()
}

fn perm_morphism(base: usize, p: &Permutation) -> WeightedMorphism {
    // output wire p(i) carries input wire i
    WeightedMorphism::from_function(base, p.len(), p.len(), |y| {
        let mut out = vec![0; y.len()];
        for (i, &v) in y.iter().enumerate() {
            out[p.image(i)] = v;
        }
        out
    })
}

fn expect_equal(name: &str, a: &WeightedMorphism, b: &WeightedMorphism) -> Result<(), String> {
    if a == b {
        Ok(())
    } else {
        Err(format!("{name}: {:?} != {:?}", a.render_rows(), b.render_rows()))
    }
}

/// Tightening, yanking, sliding (permutation) and strength on one random instance.
pub fn trace_axioms(rng: &mut StdRng) -> Result<(), String> {
    let base = rng.gen_range(1..=3);
    let e = |r: sft_core::Result<WeightedMorphism>| r.map_err(|e| e.to_string());

    // tightening: tr((1⊗f)∘g∘(1⊗h)) = f∘tr(g)∘h
    let (a, b, c, d) = (rng.gen_range(0..=1), rng.gen_range(0..=1), rng.gen_range(0..=1), rng.gen_range(0..=1));
    let g = weighted(rng, base, 1 + b, 1 + c, 2);
    let f = weighted(rng, base, c, d, 2);
    let h = weighted(rng, base, a, b, 2);
    let id1 = WeightedMorphism::identity(base, 1);
    let lhs = e(e(e(id1.tensor(&f))?.compose(&g))?.compose(&e(id1.tensor(&h))?))?.partial_trace();
    let rhs = e(f.compose(&e(g.partial_trace())?))?.compose(&h);
    expect_equal("tightening", &e(lhs)?, &e(rhs)?)?;

    // yanking: tr(σ) = id
    let yank = e(WeightedMorphism::symmetry(base, 1, 1).partial_trace())?;
    expect_equal("yanking", &yank, &WeightedMorphism::identity(base, 1))?;

    // sliding: tr_k(f∘(p⊗id)) = tr_k((p⊗id)∘f)
    let k = rng.gen_range(1..=2);
    let n = rng.gen_range(0..=1);
    let f = weighted(rng, base, k + n, k + n, 2);
    let mut images: Vec<usize> = (0..k).collect();
    images.shuffle(rng);
    let p = perm_morphism(base, &Permutation::new(images).unwrap());
    let pi = e(p.tensor(&WeightedMorphism::identity(base, n)))?;
    let lhs = e(e(f.compose(&pi))?.partial_trace_times(k))?;
    let rhs = e(e(pi.compose(&f))?.partial_trace_times(k))?;
    expect_equal("sliding", &lhs, &rhs)?;

    // strength: tr(f)⊗g = tr(f⊗g)
    let (fn_, fm, gn, gm) = (rng.gen_range(1..=2), rng.gen_range(1..=2), rng.gen_range(0..=1), rng.gen_range(0..=1));
    let f = weighted(rng, base, fn_, fm, 2);
    let g = weighted(rng, base, gn, gm, 2);
    let lhs = e(e(f.partial_trace())?.tensor(&g))?;
    let rhs = e(e(f.tensor(&g))?.partial_trace())?;
    expect_equal("strength", &lhs, &rhs)
}

fn poly_nat(rng: &mut StdRng, rows: usize, cols: usize, max: u64) -> PolyMatrix {
    nat(rng, rows, cols, max).to_poly()
}

/// A random pair with `k + n ≤ 3` and `k + m ≤ 3`.
pub fn pair(rng: &mut StdRng, n: usize, m: usize) -> Pair {
    let room = 3 - n.max(m);
    let k = rng.gen_range(0..=room);
    TracedMorphism::new(poly_nat(rng, k + m, k + n, 2), k).unwrap()
}

fn pad(g: &PolyMatrix, extra: usize) -> PolyMatrix {
    g.direct_sum(&Matrix::identity(Polynomials::NATURAL, extra)).unwrap()
}

/// A random move that applies to `f`, and the pair it produces. Factor slides are set up by
/// rebuilding `f` from a random factorization, so the returned source may differ from `f`.
pub fn random_move(rng: &mut StdRng, f: &Pair) -> (Pair, PairMove<Polynomials>, Pair) {
    let (k, n, m) = (f.dashed(), f.n(), f.m());
    loop {
        let choice = rng.gen_range(0..6);
        let (src, mv) = match choice {
            0 => {
                let mut images: Vec<usize> = (0..k).collect();
                images.shuffle(rng);
                (f.clone(), PairMove::PermuteDashed(Permutation::new(images).unwrap()))
            }
            1 => (f.clone(), PairMove::Expand(if rng.gen() { Side::Input } else { Side::Output })),
            2 => {
                // contract what an expansion just added
                let side = if rng.gen() { Side::Input } else { Side::Output };
                let Ok(grown) = apply_move(f, &PairMove::Expand(side)) else { continue };
                (grown, PairMove::Contract(side))
            }
            3 if k > 0 => {
                let mut images: Vec<usize> = (0..k).collect();
                images.shuffle(rng);
                let g = Matrix::permutation(Polynomials::NATURAL, &Permutation::new(images).unwrap());
                let dir = if rng.gen() { Direction::Forward } else { Direction::Backward };
                (f.clone(), PairMove::Slide { g, core: None, direction: dir })
            }
            4 => {
                // forward: [(g⊕I)·C, p] with g: q → p
                let (p, q) = (rng.gen_range(0..=2), rng.gen_range(0..=2));
                let g = poly_nat(rng, p, q, 2);
                let core = poly_nat(rng, q + m, p + n, 2);
                let src = TracedMorphism::new(pad(&g, m).mat_mul(&core).unwrap(), p).unwrap();
                (src, PairMove::Slide { g, core: Some(core), direction: Direction::Forward })
            }
            5 => {
                // backward: [C·(g⊕I), q]
                let (p, q) = (rng.gen_range(0..=2), rng.gen_range(0..=2));
                let g = poly_nat(rng, p, q, 2);
                let core = poly_nat(rng, q + m, p + n, 2);
                let src = TracedMorphism::new(core.mat_mul(&pad(&g, n)).unwrap(), q).unwrap();
                (src, PairMove::Slide { g, core: Some(core), direction: Direction::Backward })
            }
            _ => continue,
        };
        if let Ok(out) = apply_move(&src, &mv) {
            return (src, mv, out);
        }
    }
}

pub fn value(model: &WeightedModel, f: &Pair) -> Result<WeightedMorphism, String> {
    model.pair_value(f).map_err(|e| e.to_string())
}

/// A move on either operand of a composite or tensor leaves the honest value unchanged.
pub fn well_definedness(rng: &mut StdRng) -> Result<(), String> {
    let model = WeightedModel::with_identity(if rng.gen() { FiniteMonoid::cyclic(2).unwrap() } else { FiniteMonoid::subsets_union() });
    let (a, b, c) = (rng.gen_range(0..=1), rng.gen_range(0..=1), rng.gen_range(0..=1));
    let f0 = pair(rng, b, c);
    let g0 = pair(rng, a, b);
    let on_left = rng.gen();
    let (f, g, moved_f, moved_g, mv) = if on_left {
        let (src, mv, out) = random_move(rng, &f0);
        (src.clone(), g0.clone(), out, g0, mv)
    } else {
        let (src, mv, out) = random_move(rng, &g0);
        (f0.clone(), src.clone(), f0, out, mv)
    };
    let err = |e: sft_core::Error| e.to_string();
    let before = value(&model, &f.compose(&g).map_err(err)?)?;
    let after = value(&model, &moved_f.compose(&moved_g).map_err(err)?)?;
    if before != after {
        return Err(format!("compose after {}: {:?} vs {:?}", mv.describe(), before.render_rows(), after.render_rows()));
    }
    let before = value(&model, &f.tensor(&g).map_err(err)?)?;
    let after = value(&model, &moved_f.tensor(&moved_g).map_err(err)?)?;
    if before != after {
        return Err(format!("tensor after {}: {:?} vs {:?}", mv.describe(), before.render_rows(), after.render_rows()));
    }
    Ok(())
}

pub fn poly(c: &[i64]) -> IntPoly {
    IntPoly::from_i64s(c)
}

pub fn big(v: i64) -> BigInt {
    BigInt::from(v)
}

use sft_core::prop::Term;

const MAX_WIDTH: usize = 3;

/// One layer of generators side by side on `w` wires; returns it with its output width.
fn layer(rng: &mut StdRng, w: usize, allow_h: bool) -> (Term, usize) {
    use sft_core::prop::Generator::*;
    let (mut blocks, mut left, mut out) = (Vec::new(), w, 0);
    loop {
        let room = MAX_WIDTH.saturating_sub(out + left);
        let pick = rng.gen_range(0..8);
        let (t, i, o) = match pick {
            0 if left >= 2 => (Term::Gen(Mu), 2, 1),
            1 if left >= 1 && room >= 1 => (Term::Gen(Delta), 1, 2),
            2 if left >= 1 => (Term::Gen(Eps), 1, 0),
            3 if room >= 1 && rng.gen_bool(0.5) => (Term::Gen(Eta), 0, 1),
            4 if left >= 2 => (Term::Sym, 2, 2),
            5 if left >= 1 && allow_h => (Term::Gen(H), 1, 1),
            _ if left >= 1 => (Term::Id, 1, 1),
            _ => break,
        };
        blocks.push(t);
        left -= i;
        out += o;
    }
    (sft_core::prop::term::tensor_all(blocks), out)
}

/// A random trace-free term on `inputs` wires with at most `depth` layers.
pub fn term(rng: &mut StdRng, inputs: usize, depth: usize, allow_h: bool) -> (Term, usize) {
    let layers = rng.gen_range(1..=depth);
    let (mut acc, mut w) = layer(rng, inputs, allow_h);
    for _ in 1..layers {
        let (l, o) = layer(rng, w, allow_h);
        acc = sft_core::prop::term::compose(l, acc);
        w = o;
    }
    (acc, w)
}

/// A random term containing a trace, built as `tr(f)` possibly composed with a plain layer.
pub fn traced_term(rng: &mut StdRng, inputs: usize, allow_h: bool) -> (Term, usize) {
    loop {
        let (f, out) = term(rng, inputs + 1, 3, allow_h);
        if out == 0 {
            continue;
        }
        let t = sft_core::prop::term::trace(f);
        if rng.gen() {
            let (l, o) = layer(rng, out - 1, allow_h);
            return (sft_core::prop::term::compose(l, t), o);
        }
        return (t, out - 1);
    }
}
