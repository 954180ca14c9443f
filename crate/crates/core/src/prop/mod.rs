//! Diagram terms, generator models, and the traced completion of the prop of matrices.

pub mod model;
pub mod moves;
pub mod parser;
pub mod registry;
pub mod search;
pub mod term;
pub mod traced;

pub use model::{eval_diagram, eval_matrix, eval_pair, validate_model, Evaluated, GeneratorModel, MatrixModel};
pub use moves::{apply_move, Direction, PairMove, Side};
pub use parser::parse_term;
pub use registry::{diagram_evaluator, DiagramEvaluator, DiagramOutput};
pub use search::{pair_equiv_bounded, PairBudget, PairCertificate};
pub use term::{Generator, Term};
pub use traced::TracedMorphism;
