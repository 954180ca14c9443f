//! Generator models: assignments of the generators to matrices, and the compositional
//! evaluator.

use super::term::{self, compose, delta, eps, eta, h, id, mu, sym, tensor, Generator, Term};
use super::traced::TracedMorphism;
use crate::algebra::{Matrix, Permutation, Polynomials, SemiringSpec};
use crate::algebra::{IntPoly, Integers};
use crate::error::{Error, Result};

/// A prop functor out of the free bialgebra (+ `h`), given by where the generators go.
///
/// Tensor and identities are part of the model because a wire need not be one-dimensional
/// (weighted relations use Kronecker products).
pub trait GeneratorModel {
    type Spec: SemiringSpec;

    fn name(&self) -> String;
    fn spec(&self) -> Self::Spec;
    /// Matrix for a generator; `h` may be unassigned.
    fn generator(&self, g: Generator) -> Result<Matrix<Self::Spec>>;
    fn has_h(&self) -> bool;
    fn identity(&self, wires: usize) -> Matrix<Self::Spec>;
    /// σ_{a,b}.
    fn symmetry(&self, a: usize, b: usize) -> Matrix<Self::Spec>;
    fn tensor(&self, f: &Matrix<Self::Spec>, g: &Matrix<Self::Spec>) -> Result<Matrix<Self::Spec>>;

    /// Honest trace of the first wire, or `None` when the model has none.
    fn trace(&self, _f: &Matrix<Self::Spec>) -> Option<Result<Matrix<Self::Spec>>> {
        None
    }

    fn trace_capable(&self) -> bool {
        false
    }
}

/// Result of evaluating a term: a plain matrix, or a dashed-wire pair when a trace had to be
/// routed through the traced completion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Evaluated<S: SemiringSpec> {
    Matrix(Matrix<S>),
    Pair(TracedMorphism<S>),
}

impl<S: SemiringSpec> Evaluated<S> {
    pub fn into_matrix(self) -> Result<Matrix<S>> {
        match self {
            Evaluated::Matrix(m) => Ok(m),
            Evaluated::Pair(p) if p.dashed() == 0 => Ok(p.underlying().clone()),
            Evaluated::Pair(_) => Err(Error::Model("evaluation produced a dashed pair, not a matrix".into())),
        }
    }
}

/// Folds a term through a model. Trace nodes use the model's honest trace when it has one;
/// otherwise the whole term is evaluated as pairs `[M, k]`.
pub fn eval_diagram<M: GeneratorModel>(term: &Term, model: &M) -> Result<Evaluated<M::Spec>> {
    term.arity()?;
    if term.contains_trace() && !model.trace_capable() {
        return Ok(Evaluated::Pair(eval_pair(term, model)?));
    }
    Ok(Evaluated::Matrix(eval_matrix(term, model)?))
}

/// Trace-free (or honestly traced) evaluation to a single matrix.
pub fn eval_matrix<M: GeneratorModel>(term: &Term, model: &M) -> Result<Matrix<M::Spec>> {
    match term {
        Term::Gen(g) => model.generator(*g),
        Term::Id => Ok(model.identity(1)),
        Term::Empty => Ok(model.identity(0)),
        Term::Sym => Ok(model.symmetry(1, 1)),
        Term::Compose(f, g) => eval_matrix(f, model)?.mat_mul(&eval_matrix(g, model)?),
        Term::Tensor(f, g) => model.tensor(&eval_matrix(f, model)?, &eval_matrix(g, model)?),
        Term::Trace(f) => {
            let inner = eval_matrix(f, model)?;
            model
                .trace(&inner)
                .ok_or_else(|| Error::Model(format!("model '{}' has no trace; use pair routing", model.name())))?
        }
    }
}

/// Evaluation in the traced completion of a (wire-dimension one) matrix model.
pub fn eval_pair<M: GeneratorModel>(term: &Term, model: &M) -> Result<TracedMorphism<M::Spec>> {
    Ok(match term {
        Term::Compose(f, g) => eval_pair(f, model)?.compose(&eval_pair(g, model)?)?,
        Term::Tensor(f, g) => eval_pair(f, model)?.tensor(&eval_pair(g, model)?)?,
        Term::Trace(f) => eval_pair(f, model)?.trace()?,
        leaf => {
            let (n, m) = leaf.arity()?;
            let mat = eval_matrix(leaf, model)?;
            if (mat.cols(), mat.rows()) != (n, m) {
                return Err(Error::Model("pair routing needs one-dimensional wires".into()));
            }
            TracedMorphism::iota(mat)
        }
    })
}

/// A named equation between two terms.
pub struct Equation {
    pub name: &'static str,
    pub lhs: Term,
    pub rhs: Term,
}

fn eq(name: &'static str, lhs: Term, rhs: Term) -> Equation {
    Equation { name, lhs, rhs }
}

/// The ten bialgebra equations (the two unit laws are listed separately).
pub fn bialgebra_equations() -> Vec<Equation> {
    vec![
        eq("unit (left)", compose(mu(), tensor(eta(), id())), id()),
        eq("unit (right)", compose(mu(), tensor(id(), eta())), id()),
        eq("associativity", compose(mu(), tensor(mu(), id())), compose(mu(), tensor(id(), mu()))),
        eq("commutativity", compose(mu(), sym()), mu()),
        eq("counit (left)", compose(tensor(eps(), id()), delta()), id()),
        eq("counit (right)", compose(tensor(id(), eps()), delta()), id()),
        eq("coassociativity", compose(tensor(delta(), id()), delta()), compose(tensor(id(), delta()), delta())),
        eq("cocommutativity", compose(sym(), delta()), delta()),
        eq(
            "bigebra",
            term::compose_all([
                tensor(mu(), mu()),
                term::tensor_all([id(), sym(), id()]),
                tensor(delta(), delta()),
            ]),
            compose(delta(), mu()),
        ),
        eq("copy of unit", compose(delta(), eta()), tensor(eta(), eta())),
        eq("discard of product", compose(eps(), mu()), tensor(eps(), eps())),
        eq("discard of unit", compose(eps(), eta()), Term::Empty),
    ]
}

/// The four equations making `h` a bialgebra endomorphism.
pub fn h_equations() -> Vec<Equation> {
    vec![
        eq("h preserves product", compose(h(), mu()), compose(mu(), tensor(h(), h()))),
        eq("h preserves unit", compose(h(), eta()), eta()),
        eq("h preserves copy", compose(tensor(h(), h()), delta()), compose(delta(), h())),
        eq("h preserves discard", compose(eps(), h()), eps()),
    ]
}

/// Checks every equation as an exact matrix identity; the error names the first failure.
pub fn validate_model<M: GeneratorModel>(model: &M) -> Result<()> {
    let mut eqs = bialgebra_equations();
    if model.has_h() {
        eqs.extend(h_equations());
    }
    for e in eqs {
        let l = eval_matrix(&e.lhs, model)?;
        let r = eval_matrix(&e.rhs, model)?;
        if l != r {
            return Err(Error::Model(format!("model '{}' violates the {} equation", model.name(), e.name)));
        }
    }
    Ok(())
}

/// The prop of matrices: μ ↦ [1 1], η ↦ 1×0, Δ ↦ [1;1], ε ↦ 0×1, and optionally h ↦ [h].
#[derive(Clone, Debug)]
pub struct MatrixModel<S: SemiringSpec> {
    spec: S,
    h: Option<S::Elem>,
}

impl<S: SemiringSpec> MatrixModel<S> {
    /// Validated at construction.
    pub fn new(spec: S, h: Option<S::Elem>) -> Result<Self> {
        if let Some(v) = &h {
            if !spec.contains(v) {
                return Err(Error::NotInSemiring { entry: spec.render(v), semiring: spec.name() });
            }
        }
        let model = MatrixModel { spec, h };
        validate_model(&model)?;
        Ok(model)
    }
}

impl MatrixModel<Polynomials> {
    /// The ℤ₊[t] model with h ↦ [t].
    pub fn standard() -> Self {
        Self::new(Polynomials::NATURAL, Some(IntPoly::t())).expect("standard model is valid")
    }
}

impl MatrixModel<Integers> {
    /// The ℤ₊ model, with no `h`.
    pub fn natural() -> Self {
        Self::new(Integers::NATURAL, None).expect("ℤ₊ model is valid")
    }
}

impl<S: SemiringSpec> GeneratorModel for MatrixModel<S> {
    type Spec = S;

    fn name(&self) -> String {
        format!("matrix/{}", self.spec.name())
    }

    fn spec(&self) -> S {
        self.spec.clone()
    }

    fn generator(&self, g: Generator) -> Result<Matrix<S>> {
        let s = self.spec.clone();
        let o = s.one();
        Ok(match g {
            Generator::Mu => Matrix::new(s, 1, 2, vec![o.clone(), o])?,
            Generator::Eta => Matrix::zeros(s, 1, 0),
            Generator::Delta => Matrix::new(s, 2, 1, vec![o.clone(), o])?,
            Generator::Eps => Matrix::zeros(s, 0, 1),
            Generator::H => {
                let v = self.h.clone().ok_or_else(|| {
                    Error::Model(format!("generator h has no assignment in model '{}'", self.name()))
                })?;
                Matrix::new(s, 1, 1, vec![v])?
            }
        })
    }

    fn has_h(&self) -> bool {
        self.h.is_some()
    }

    fn identity(&self, wires: usize) -> Matrix<S> {
        Matrix::identity(self.spec.clone(), wires)
    }

    fn symmetry(&self, a: usize, b: usize) -> Matrix<S> {
        Matrix::permutation(self.spec.clone(), &Permutation::block_swap(a, b))
    }

    fn tensor(&self, f: &Matrix<S>, g: &Matrix<S>) -> Result<Matrix<S>> {
        f.direct_sum(g)
    }
}
