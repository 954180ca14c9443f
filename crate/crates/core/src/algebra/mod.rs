//! Exact arithmetic: integers, polynomials, ℕ∞, truncated series and dense matrices.

pub mod det;
pub mod matrix;
pub mod natinf;
pub mod perm;
pub mod poly;
pub mod semiring;
pub mod series;
pub mod smith;

pub use det::det_poly;
pub use matrix::{Matrix, PolyMatrix, ZMatrix};
pub use natinf::NatInf;
pub use perm::Permutation;
pub use poly::IntPoly;
pub use semiring::{
    registered_semirings, Integers, NatInfSemiring, Polynomials, PrimeField, RegisteredSemiring, RingKind,
    RingSpec, SemiringSpec,
};
pub use series::TruncatedSeries;
pub use smith::{smith_decomposition, smith_normal_form, SmithDecomposition, SmithForm};
