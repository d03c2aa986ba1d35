use alloc::collections::BTreeMap;
use alloc::vec::Vec;
#[allow(unused_imports)] // std, when linked, supplies these as inherent methods
use num_traits::Float;

use crate::fem::FemFunction;
use crate::sparse_grid::{
    generated_points, CollocationPoint, MultiIndex, MultiIndexSet, SparseGridBasis,
};
use crate::{Error, Result};

/// `τ̃_ν` for one index of the reduced margin.
#[derive(Clone, Debug, PartialEq)]
pub struct ParametricIndicator {
    pub index: MultiIndex,
    pub value: f64,
}

/// Everything derived from the samples at the enhanced grid.
#[derive(Clone, Debug)]
pub struct ParametricAnalysis {
    /// One entry per reduced-margin index, in lexicographic order.
    pub indicators: Vec<ParametricIndicator>,
    /// `τ = ‖Σ_{z'∈Ĉ\C} d_{z'} L̂_{z'}‖`.
    pub tau: f64,
    /// The enhanced basis over `I ∪ R(I)`.
    pub enhanced: SparseGridBasis,
}

/// `I ∪ R(I)`.
pub(crate) fn enhanced_set(set: &MultiIndexSet) -> Result<MultiIndexSet> {
    let margin = MultiIndexSet::from_indices(set.dim(), set.reduced_margin()?)?;
    set.union(&margin)
}

/// Computes indicators and `τ` from samples that all live on one mesh
/// (`T_0` for the multilevel method). `samples` must hold every point of the
/// enhanced grid.
pub fn parametric_analysis(
    basis: &SparseGridBasis,
    samples: &BTreeMap<CollocationPoint, FemFunction>,
) -> Result<ParametricAnalysis> {
    let set = basis.index_set();
    let enhanced = SparseGridBasis::new(enhanced_set(set)?)?;
    let norms_hat = enhanced.lagrange_norms();
    let get = |z: &CollocationPoint| {
        samples
            .get(z)
            .ok_or_else(|| Error::contract("missing sample for a sparse-grid point"))
    };
    let current: Vec<&FemFunction> = basis.points().iter().map(get).collect::<Result<_>>()?;

    let mut indicators = Vec::new();
    let mut new_points: Vec<usize> = Vec::new();
    let mut diffs: Vec<FemFunction> = Vec::new();
    for nu in set.reduced_margin()? {
        let mut value = 0.0;
        for zp in generated_points(set, &nu)? {
            let l = basis.lagrange_values(zp.coords())?;
            let target = get(&zp)?;
            let mut d = target.coeffs().to_vec();
            for (u, &lz) in current.iter().zip(&l) {
                if lz != 0.0 {
                    if !alloc::sync::Arc::ptr_eq(u.mesh(), target.mesh())
                        && **u.mesh() != **target.mesh()
                    {
                        return Err(Error::IncompatibleMesh(
                            "parametric samples must share one mesh",
                        ));
                    }
                    for (di, ui) in d.iter_mut().zip(u.coeffs()) {
                        *di -= lz * ui;
                    }
                }
            }
            let d = FemFunction::new(target.mesh().clone(), d)?;
            let pos = enhanced
                .position(&zp)
                .expect("generated point is in the enhanced grid");
            value += d.energy_norm() * norms_hat[pos];
            new_points.push(pos);
            diffs.push(d);
        }
        indicators.push(ParametricIndicator { index: nu, value });
    }

    let gram = enhanced.gram().restrict(&new_points);
    let n = diffs.len();
    let mut inner = alloc::vec![0.0; n * n];
    for i in 0..n {
        for j in i..n {
            let v = diffs[i].energy_inner(&diffs[j])?;
            inner[i * n + j] = v;
            inner[j * n + i] = v;
        }
    }
    let tau = gram.weighted_sum(|i, j| inner[i * n + j]).max(0.0).sqrt();
    Ok(ParametricAnalysis {
        indicators,
        tau,
        enhanced,
    })
}

/// `τ̃_ν` for every `ν ∈ R(I)`.
pub fn parametric_indicators(
    basis: &SparseGridBasis,
    samples: &BTreeMap<CollocationPoint, FemFunction>,
) -> Result<Vec<ParametricIndicator>> {
    parametric_analysis(basis, samples).map(|a| a.indicators)
}

/// `τ`.
pub fn global_parametric_estimate(
    basis: &SparseGridBasis,
    samples: &BTreeMap<CollocationPoint, FemFunction>,
) -> Result<f64> {
    parametric_analysis(basis, samples).map(|a| a.tau)
}
