//! The weighted-relation model of a finite commutative monoid with an endomorphism `h`.

use num_traits::ToPrimitive;

use super::monoid::{FiniteMonoid, MonoidHom};
use super::morphism::{checked_power, decode, encode, partial_trace_matrix, WeightedMorphism};
use crate::algebra::{IntPoly, Matrix, NatInf, NatInfSemiring, PolyMatrix};
use crate::error::{Error, Result};
use crate::prop::{validate_model, Generator, GeneratorModel, TracedMorphism};

/// Largest tuple space enumerated by default.
pub const DEFAULT_ENUMERATION_LIMIT: u64 = 1 << 22;

/// μ ↦ multiplication relation, η ↦ unit point, Δ ↦ copy, ε ↦ discard, h ↦ graph of `h`.
#[derive(Clone, Debug)]
pub struct WeightedModel {
    monoid: FiniteMonoid,
    hom: MonoidHom,
    limit: u64,
}

impl WeightedModel {
    /// Builds and validates the model against every bialgebra and `h` equation.
    pub fn new(monoid: FiniteMonoid, hom: MonoidHom) -> Result<Self> {
        let model = WeightedModel { monoid, hom, limit: DEFAULT_ENUMERATION_LIMIT };
        validate_model(&model)?;
        Ok(model)
    }

    /// `h` defaults to the identity.
    pub fn with_identity(monoid: FiniteMonoid) -> Self {
        let hom = MonoidHom::identity(&monoid);
        Self::new(monoid, hom).expect("monoid models are valid")
    }

    pub fn with_limit(mut self, limit: u64) -> Self {
        self.limit = limit;
        self
    }

    pub fn monoid(&self) -> &FiniteMonoid {
        &self.monoid
    }

    pub fn hom(&self) -> &MonoidHom {
        &self.hom
    }

    pub fn base(&self) -> usize {
        self.monoid.size()
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    /// Per-entry lookup: `lut[i][j][x] = Σ_d c_{ijd} · h^d(x)` for entry `Σ_d c_{ijd} t^d`.
    fn lookup(&self, m: &PolyMatrix) -> Result<Vec<Vec<Vec<usize>>>> {
        let mut max_deg = 0;
        for e in m.entries() {
            if !e.is_nonnegative() {
                return Err(Error::NotInSemiring { entry: e.render_compact(), semiring: "zplus_t".into() });
            }
            max_deg = max_deg.max(e.degree().unwrap_or(0));
        }
        let powers: Vec<Vec<usize>> = (0..=max_deg).map(|d| self.hom.power(d)).collect();
        let x = &self.monoid;
        let entry_table = |e: &IntPoly| -> Result<Vec<usize>> {
            (0..x.size())
                .map(|v| {
                    let mut acc = x.unit();
                    for (d, c) in e.coeffs().iter().enumerate() {
                        let c = c.to_u64().ok_or_else(|| Error::OutOfRange(format!("coefficient {c}")))?;
                        acc = x.op(acc, x.times(c, powers[d][v]));
                    }
                    Ok(acc)
                })
                .collect()
        };
        (0..m.rows()).map(|i| (0..m.cols()).map(|j| entry_table(m.get(i, j))).collect()).collect()
    }

    /// The function `y ↦ (Σ_j M_ij(h)(y_j))_i` denoted by a ℤ₊[t] matrix.
    pub fn matrix_function(&self, m: &PolyMatrix) -> Result<impl Fn(&[usize]) -> Vec<usize> + '_> {
        let lut = self.lookup(m)?;
        let monoid = &self.monoid;
        Ok(move |y: &[usize]| {
            lut.iter().map(|row| monoid.sum(row.iter().zip(y).map(|(t, &v)| t[v]))).collect()
        })
    }

    /// Image of a ℤ₊[t] matrix (a prop morphism `cols → rows`) as a weighted relation.
    pub fn matrix_value(&self, m: &PolyMatrix) -> Result<WeightedMorphism> {
        let b = self.base();
        checked_power(b, m.rows() + m.cols(), self.limit)?;
        let f = self.matrix_function(m)?;
        Ok(WeightedMorphism::from_function(b, m.cols(), m.rows(), f))
    }

    /// Honest trace of a pair: weight of `(z, y)` is the number of dashed tuples `x` with
    /// `F(x, y) = (x, z)`.
    pub fn pair_value(&self, pair: &TracedMorphism<crate::algebra::Polynomials>) -> Result<WeightedMorphism> {
        let b = self.base();
        let (k, n, m) = (pair.dashed(), pair.n(), pair.m());
        let inputs = checked_power(b, k + n, self.limit)?;
        checked_power(b, m + n, self.limit)?;
        let f = self.matrix_function(pair.underlying())?;
        let (rows, cols) = (b.pow(m as u32), b.pow(n as u32));
        let mut counts = vec![0u64; rows * cols];
        for idx in 0..inputs {
            let xy = decode(b, k + n, idx);
            let out = f(&xy);
            if out[..k] == xy[..k] {
                counts[encode(b, &out[k..]) * cols + encode(b, &xy[k..])] += 1;
            }
        }
        let data = counts.into_iter().map(NatInf::from).collect();
        WeightedMorphism::new(b, n, m, Matrix::new(NatInfSemiring, rows, cols, data)?)
    }

    /// Same value as [`Self::pair_value`], computed densely by repeated partial traces.
    pub fn pair_value_dense(&self, pair: &TracedMorphism<crate::algebra::Polynomials>) -> Result<WeightedMorphism> {
        self.matrix_value(pair.underlying())?.partial_trace_times(pair.dashed())
    }
}

impl GeneratorModel for WeightedModel {
    type Spec = NatInfSemiring;

    fn name(&self) -> String {
        format!("weighted/{}/h={}", self.monoid.name(), self.hom.label())
    }

    fn spec(&self) -> NatInfSemiring {
        NatInfSemiring
    }

    fn generator(&self, g: Generator) -> Result<Matrix<NatInfSemiring>> {
        let b = self.base();
        let x = &self.monoid;
        let w = match g {
            Generator::Mu => WeightedMorphism::from_function(b, 2, 1, |v| vec![x.op(v[0], v[1])]),
            Generator::Eta => WeightedMorphism::from_function(b, 0, 1, |_| vec![x.unit()]),
            Generator::Delta => WeightedMorphism::from_function(b, 1, 2, |v| vec![v[0], v[0]]),
            Generator::Eps => WeightedMorphism::from_function(b, 1, 0, |_| vec![]),
            Generator::H => WeightedMorphism::from_function(b, 1, 1, |v| vec![self.hom.apply(v[0])]),
        };
        Ok(w.matrix().clone())
    }

    fn has_h(&self) -> bool {
        true
    }

    fn identity(&self, wires: usize) -> Matrix<NatInfSemiring> {
        WeightedMorphism::identity(self.base(), wires).matrix().clone()
    }

    fn symmetry(&self, a: usize, b: usize) -> Matrix<NatInfSemiring> {
        WeightedMorphism::symmetry(self.base(), a, b).matrix().clone()
    }

    fn tensor(&self, f: &Matrix<NatInfSemiring>, g: &Matrix<NatInfSemiring>) -> Result<Matrix<NatInfSemiring>> {
        f.kronecker(g)
    }

    fn trace(&self, f: &Matrix<NatInfSemiring>) -> Option<Result<Matrix<NatInfSemiring>>> {
        let b = self.base();
        Some(if f.rows() % b != 0 || f.cols() % b != 0 {
            Err(Error::NothingToTrace)
        } else {
            Ok(partial_trace_matrix(b, f))
        })
    }

    fn trace_capable(&self) -> bool {
        true
    }
}
