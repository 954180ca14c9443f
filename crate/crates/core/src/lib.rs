//! Exact algebra for subshifts of finite type: the prop of matrices and its traced completion,
//! weighted-relation models over finite monoids, strong shift / flow equivalence search with
//! replayable certificates, and the classical conjugacy and flow invariants.

pub mod algebra;
pub mod error;
pub mod format;
pub mod invariants;
pub mod prop;
pub mod shift;
pub mod weighted;

pub use error::{Error, Result};
