//! Diagram evaluators selectable by coefficient ring.

use serde_json::{json, Value};

use super::model::{eval_diagram, Evaluated, MatrixModel};
use super::term::Term;
use super::traced::TracedMorphism;
use crate::algebra::{IntPoly, Matrix, Polynomials, PrimeField, RingKind, SemiringSpec};
use crate::error::Result;
use crate::format::render_matrix_rows;
use crate::weighted::{FiniteMonoid, WeightedModel};

/// What a diagram evaluates to, ready for printing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DiagramOutput {
    Matrix { rows: Vec<String> },
    /// A traced pair, with its value in the weighted model over ℤ/2 when that is defined.
    Pair { dashed: usize, rows: Vec<String>, model_value: Option<String> },
}

impl DiagramOutput {
    pub fn render_text(&self) -> String {
        match self {
            DiagramOutput::Matrix { rows } => rows.iter().map(|r| format!("{r}\n")).collect(),
            DiagramOutput::Pair { dashed, rows, model_value } => {
                let mut out = format!("# dashed {dashed}\n");
                out.extend(rows.iter().map(|r| format!("{r}\n")));
                if let Some(v) = model_value {
                    out.push_str(&format!("# model value: {v}\n"));
                }
                out
            }
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            DiagramOutput::Matrix { rows } => json!({ "schema": 1, "kind": "matrix", "rows": rows }),
            DiagramOutput::Pair { dashed, rows, model_value } => {
                json!({ "schema": 1, "kind": "pair", "dashed": dashed, "rows": rows, "model_value": model_value })
            }
        }
    }
}

pub trait DiagramEvaluator: Send + Sync {
    fn ring(&self) -> RingKind;
    fn evaluate(&self, term: &Term) -> Result<DiagramOutput>;
}

struct PolyEvaluator {
    ring: RingKind,
    model: MatrixModel<Polynomials>,
}

struct FieldEvaluator {
    ring: RingKind,
    model: MatrixModel<PrimeField>,
}

fn plain_rows<S: SemiringSpec>(m: &Matrix<S>) -> Vec<String> {
    m.render_rows()
}

// ℤ/2 with h the identity: the value that yanking reduces to `id`
fn z2_value(pair: &TracedMorphism<Polynomials>) -> Option<String> {
    let model = WeightedModel::with_identity(FiniteMonoid::cyclic(2).ok()?);
    let v = model.pair_value(pair).ok()?;
    Some(if v.is_identity() { "id".into() } else { v.render_rows().join("; ") })
}

impl DiagramEvaluator for PolyEvaluator {
    fn ring(&self) -> RingKind {
        self.ring
    }

    fn evaluate(&self, term: &Term) -> Result<DiagramOutput> {
        Ok(match eval_diagram(term, &self.model)? {
            Evaluated::Matrix(m) => DiagramOutput::Matrix { rows: render_matrix_rows(&m) },
            Evaluated::Pair(p) => DiagramOutput::Pair {
                dashed: p.dashed(),
                rows: render_matrix_rows(p.underlying()),
                model_value: z2_value(&p),
            },
        })
    }
}

impl DiagramEvaluator for FieldEvaluator {
    fn ring(&self) -> RingKind {
        self.ring
    }

    fn evaluate(&self, term: &Term) -> Result<DiagramOutput> {
        Ok(match eval_diagram(term, &self.model)? {
            Evaluated::Matrix(m) => DiagramOutput::Matrix { rows: plain_rows(&m) },
            Evaluated::Pair(p) => DiagramOutput::Pair { dashed: p.dashed(), rows: plain_rows(p.underlying()), model_value: None },
        })
    }
}

/// The evaluator for `ring`. Rings with `t` interpret `h` as `[t]`; the others have no `h`.
pub fn diagram_evaluator(ring: RingKind) -> Result<Box<dyn DiagramEvaluator>> {
    Ok(match ring {
        RingKind::Fp(p) => Box::new(FieldEvaluator { ring, model: MatrixModel::new(PrimeField::new(p)?, None)? }),
        _ => {
            let spec = Polynomials { nonnegative: ring.nonnegative() };
            let h = ring.has_t().then(IntPoly::t);
            Box::new(PolyEvaluator { ring, model: MatrixModel::new(spec, h)? })
        }
    })
}
