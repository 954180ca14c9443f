//! Solution counts of `h(Mx) = x` over a finite monoid, two ways.

use num_traits::ToPrimitive;

use super::model::WeightedModel;
use super::morphism::{checked_power, decode};
use crate::algebra::{NatInf, ZMatrix};
use crate::error::{Error, Result};

fn small_entries(m: &ZMatrix) -> Result<Vec<Vec<u64>>> {
    m.require_square()?;
    m.to_u64_rows().ok_or_else(|| Error::NotInSemiring { entry: "negative or huge entry".into(), semiring: "zplus".into() })
}

/// Value of the fully traced diagram of `tM`: the dense relation of `y ↦ (Σ_j a_ij·h(y_j))_i`
/// traced on every wire.
pub fn interpret_matrix(m: &ZMatrix, model: &WeightedModel) -> Result<NatInf> {
    let n = m.require_square()?;
    small_entries(m)?;
    let rel = model.matrix_value(&m.to_poly().times_t())?;
    let scalar = rel.partial_trace_times(n)?;
    Ok(scalar.matrix().get(0, 0).clone())
}

/// Brute force over `x ∈ X^n`, testing `h((Mx)_i) = x_i` with `(Mx)_i = Σ_j a_ij·x_j`.
pub fn count_fixed_points(m: &ZMatrix, model: &WeightedModel) -> Result<NatInf> {
    let n = m.require_square()?;
    let a = small_entries(m)?;
    let x = model.monoid();
    let h = model.hom();
    let total = checked_power(x.size(), n, model.limit())?;
    let mut count = 0u64;
    for idx in 0..total {
        let v = decode(x.size(), n, idx);
        let fixed = (0..n).all(|i| {
            let s = x.sum((0..n).map(|j| x.times(a[i][j], v[j])));
            h.apply(s) == v[i]
        });
        if fixed {
            count += 1;
        }
    }
    Ok(NatInf::from(count))
}

/// Both computations, failing loudly if they disagree.
pub fn checked_fixed_count(m: &ZMatrix, model: &WeightedModel) -> Result<NatInf> {
    let a = interpret_matrix(m, model)?;
    let b = count_fixed_points(m, model)?;
    if a != b {
        return Err(Error::InternalConsistency(format!("diagram value {a} but {b} solutions")));
    }
    Ok(a)
}

pub fn natinf_to_u64(v: &NatInf) -> Option<u64> {
    v.finite().and_then(ToPrimitive::to_u64)
}
