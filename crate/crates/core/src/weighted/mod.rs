//! Weighted relations over finite commutative monoids: the honest-trace model.

pub mod fixed;
pub mod model;
pub mod monoid;
pub mod morphism;

pub use fixed::{checked_fixed_count, count_fixed_points, interpret_matrix};
pub use model::WeightedModel;
pub use monoid::{registered_monoids, FiniteMonoid, MonoidDocument, MonoidHom};
pub use morphism::WeightedMorphism;
