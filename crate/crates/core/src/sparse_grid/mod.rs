//! Sparse grids on `Γ = [-1, 1]^M` built from nested Clenshaw–Curtis rules.
//!
//! A monotone [`MultiIndexSet`] selects tensor grids `C^(ν)`; their union is
//! the sparse grid and the interpolation operator is written in combination
//! form `Σ_ν c_ν ⊗_m I^(ν_m)`. Lagrange functions `L_z` are never expanded
//! into monomials: they are evaluated through the combination coefficients
//! and 1D barycentric formulas.

mod basis;
mod clenshaw_curtis;
pub mod gauss_legendre;
mod multi_index;

pub use basis::{CollocationPoint, SparseGridBasis, SymmetricMatrix};
pub use clenshaw_curtis::{cc_points, level_size, Knot, MAX_LEVEL};
pub use multi_index::{combination_coeffs, MultiIndex, MultiIndexSet};

use crate::Result;
use alloc::collections::BTreeSet;
use alloc::vec::Vec;

/// Deduplicated union of the tensor grids of `set`, ordered by point key.
pub fn grid_points(set: &MultiIndexSet) -> Vec<CollocationPoint> {
    let mut out = BTreeSet::new();
    for nu in set.iter() {
        for p in CollocationPoint::tensor_grid(nu) {
            out.insert(p);
        }
    }
    out.into_iter().collect()
}

/// Points of `C^(ν)` that are not yet in the grid of `set`.
///
/// `ν` must lie in the reduced margin of `set`.
pub fn generated_points(set: &MultiIndexSet, nu: &MultiIndex) -> Result<Vec<CollocationPoint>> {
    if set.contains(nu) || !set.is_admissible(nu) {
        return Err(crate::Error::contract("index is not in the reduced margin"));
    }
    // A tensor point of C^(ν) is old iff it already lies in some C^(ν - e_m):
    // its knot in direction m must then appear before level ν_m.
    Ok(CollocationPoint::tensor_grid(nu)
        .into_iter()
        .filter(|p| {
            p.knots()
                .iter()
                .zip(nu.entries())
                .all(|(k, &level)| k.first_level() == level)
        })
        .collect())
}
