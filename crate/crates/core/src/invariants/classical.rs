//! Conjugacy and flow invariants of square nonnegative matrices.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::algebra::{det_poly, smith_normal_form, IntPoly, Matrix, PolyMatrix, Polynomials, PrimeField, TruncatedSeries, ZMatrix};
use crate::error::Result;

/// A finitely generated abelian group `ℤ^r ⊕ ℤ/d₁ ⊕ … ⊕ ℤ/d_k` with `d₁ | d₂ | …` and `dᵢ > 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AbelianGroupClass {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl AbelianGroupClass {
    /// Cokernel of an integer matrix.
    pub fn cokernel(m: &ZMatrix) -> Self {
        let snf = smith_normal_form(&m.to_signed());
        let torsion = snf.divisors.iter().map(|d| d.abs()).filter(|d| !d.is_one()).collect();
        AbelianGroupClass { free_rank: snf.free_rank, torsion }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }
}

impl fmt::Display for AbelianGroupClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return f.write_str("trivial");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        f.write_str(&parts.join(" (+) "))
    }
}

/// The Bowen–Franks group `ℤⁿ / (M − I)ℤⁿ`.
pub fn bowen_franks(m: &ZMatrix) -> Result<AbelianGroupClass> {
    Ok(AbelianGroupClass::cokernel(&m.to_signed().identity_minus()?))
}

/// `ζ_M(t) = 1 / denominator`, with `denominator = det(I − tM)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ZetaInvariant {
    pub denominator: IntPoly,
}

impl fmt::Display for ZetaInvariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.denominator.render_ascending())
    }
}

fn relation_matrix(m: &ZMatrix) -> Result<PolyMatrix> {
    m.to_poly().times_t().to_signed().identity_minus()
}

// det(I − tM) has constant term 1; the normalization only matters for the empty matrix
fn normalize_constant(p: IntPoly) -> IntPoly {
    if p.constant_term().is_negative() {
        -&p
    } else {
        p
    }
}

pub fn zeta_poly(m: &ZMatrix) -> Result<ZetaInvariant> {
    Ok(ZetaInvariant { denominator: normalize_constant(det_poly(&relation_matrix(m)?)?) })
}

/// `det(tI − M)` with every factor of `t` removed, made monic.
pub fn spectrum_away_from_zero(m: &ZMatrix) -> Result<IntPoly> {
    let n = m.require_square()?;
    let tm = m.to_poly().to_signed();
    let char_matrix = Matrix::from_fn(Polynomials::ALL, n, n, |i, j| {
        let diag = if i == j { IntPoly::t() } else { IntPoly::zero() };
        &diag - tm.get(i, j)
    });
    let p = det_poly(&char_matrix)?.strip_t();
    Ok(match p.leading() {
        Some(c) if c.is_negative() => -&p,
        _ => p,
    })
}

/// `tr(Mⁿ)`, the number of points of period `n`.
pub fn periodic_point_count(m: &ZMatrix, period: u32) -> Result<BigInt> {
    m.require_square()?;
    m.to_signed().pow(period)?.trace()
}

/// `1 / det(I − tM)` through `t^order`.
pub fn zeta_series(m: &ZMatrix, order: usize) -> Result<TruncatedSeries> {
    TruncatedSeries::from_poly(order, &zeta_poly(m)?.denominator).reciprocal()
}

/// `exp(Σ_{k=1..order} tr(Mᵏ)·tᵏ/k)`, the zeta function computed from periodic points.
pub fn periodic_point_series(m: &ZMatrix, order: usize) -> Result<TruncatedSeries> {
    let mut coeffs = vec![BigRational::zero()];
    for k in 1..=order {
        let count = periodic_point_count(m, k as u32)?;
        coeffs.push(BigRational::new(count, BigInt::from(k)));
    }
    TruncatedSeries::from_coeffs(order, coeffs).exp()
}

/// Number of `x ∈ 𝔽_pⁿ` with `λ·Mx = x`, i.e. `p^nullity(λM − I)`.
pub fn finite_field_fixed_count(m: &ZMatrix, p: u64, lambda: u64) -> Result<BigInt> {
    let n = m.require_square()?;
    let field = PrimeField::new(p)?;
    let lam = lambda % p;
    let mut a: Vec<Vec<u64>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let v = (field.reduce(m.get(i, j)) as u128 * lam as u128 % p as u128) as u64;
                    if i == j { (v + p - 1) % p } else { v }
                })
                .collect()
        })
        .collect();
    let rank = rank_mod_p(&mut a, &field);
    Ok(BigInt::from(p).pow((n - rank) as u32))
}

fn rank_mod_p(a: &mut [Vec<u64>], field: &PrimeField) -> usize {
    let p = field.modulus() as u128;
    let (rows, cols) = (a.len(), a.first().map_or(0, Vec::len));
    let mut rank = 0;
    for c in 0..cols {
        let Some(pivot) = (rank..rows).find(|&r| a[r][c] != 0) else { continue };
        a.swap(rank, pivot);
        let inv = field.inverse(a[rank][c]).expect("nonzero elements are invertible") as u128;
        for r in 0..rows {
            if r != rank && a[r][c] != 0 {
                let factor = a[r][c] as u128 * inv % p;
                for k in c..cols {
                    let sub = factor * a[rank][k] as u128 % p;
                    a[r][k] = ((a[r][k] as u128 + p - sub) % p) as u64;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// The ℤ[t]-module presented by `I − tM`, whose cokernel is the dimension module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModulePresentation {
    pub relation_matrix: PolyMatrix,
    pub generators: usize,
    /// Generator of the 0th Fitting ideal: `det(I − tM)` with constant term `+1`.
    pub fitting_invariant: IntPoly,
}

impl ModulePresentation {
    /// The cokernel of the relation matrix at `t = 1`, which is the Bowen–Franks group.
    pub fn specialize_at_one(&self) -> AbelianGroupClass {
        AbelianGroupClass::cokernel(&self.relation_matrix.eval(&BigInt::one()))
    }
}

pub fn dimension_module(m: &ZMatrix) -> Result<ModulePresentation> {
    let n = m.require_square()?;
    let rel = relation_matrix(m)?;
    let fitting = normalize_constant(det_poly(&rel)?);
    Ok(ModulePresentation { relation_matrix: rel, generators: n, fitting_invariant: fitting })
}

/// `⟨x₁ … xₙ | tMx = x⟩` over ℤ₊[t], kept exactly as written.
///
/// Relation `i` is stored as the coefficient vector of `(tMx)ᵢ` against `eᵢ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemimodulePresentation {
    pub generators: usize,
    pub relations: Vec<(Vec<IntPoly>, Vec<IntPoly>)>,
}

impl SemimodulePresentation {
    fn var(&self, i: usize) -> String {
        const SUB: [char; 10] = ['₀', '₁', '₂', '₃', '₄', '₅', '₆', '₇', '₈', '₉'];
        if self.generators == 1 {
            return "x".into();
        }
        let digits: String = (i + 1).to_string().chars().map(|c| SUB[c as usize - '0' as usize]).collect();
        format!("x{digits}")
    }

    fn side(&self, coeffs: &[IntPoly]) -> String {
        let terms: Vec<String> = coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| {
                let c = c.render_compact();
                if c == "1" {
                    self.var(j)
                } else {
                    format!("{c}{}", self.var(j))
                }
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }
}

impl fmt::Display for SemimodulePresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = (0..self.generators).map(|i| self.var(i)).collect();
        let rels: Vec<String> =
            self.relations.iter().map(|(l, r)| format!("{} = {}", self.side(l), self.side(r))).collect();
        write!(f, "⟨{} | {}⟩", gens.join(", "), rels.join(", "))
    }
}

/// The ℤ₊[t]-semimodule presentation, an SSE invariant up to isomorphism.
///
/// No normal form is attempted. For `[[2]]` this is `⟨x | 2tx = x⟩`, the semimodule ℤ₊[1/2]
/// with `t` acting as multiplication by `1/2`.
pub fn semimodule_presentation(m: &ZMatrix) -> Result<SemimodulePresentation> {
    let n = m.require_square()?;
    let tm = m.to_natural()?.to_poly().times_t();
    let relations = (0..n)
        .map(|i| {
            let lhs = tm.row(i).to_vec();
            let rhs = (0..n).map(|j| if i == j { IntPoly::one() } else { IntPoly::zero() }).collect();
            (lhs, rhs)
        })
        .collect();
    Ok(SemimodulePresentation { generators: n, relations })
}
