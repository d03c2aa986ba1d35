use alloc::vec::Vec;
#[allow(unused_imports)] // std, when linked, supplies these as inherent methods
use num_traits::Float;

use crate::fem::{FemFunction, GradientField, LeafField};
use crate::sparse_grid::SymmetricMatrix;
use crate::Result;

/// Estimates logged at an iteration.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GlobalEstimates {
    pub mu: f64,
    pub tau: f64,
    pub iteration: usize,
    pub dofs: usize,
}

fn pairwise<T>(fields: &[T], inner: impl Fn(&T, &T) -> Result<f64>) -> Result<Vec<f64>> {
    let n = fields.len();
    let mut out = alloc::vec![0.0; n * n];
    for i in 0..n {
        for j in i..n {
            let v = inner(&fields[i], &fields[j])?;
            out[i * n + j] = v;
            out[j * n + i] = v;
        }
    }
    Ok(out)
}

/// `‖Σ_z v_z L_z‖_{L²_π(Γ; X)}` for functions on meshes of one forest, with
/// `gram` the Gram matrix of the `L_z` in the order of `values`.
pub fn bochner_norm(gram: &SymmetricMatrix, values: &[FemFunction]) -> Result<f64> {
    let fields: Vec<GradientField> = values.iter().map(GradientField::new).collect();
    gradient_bochner_norm(gram, &fields.iter().collect::<Vec<_>>())
}

/// [`bochner_norm`] for functions already reduced to their gradients.
pub fn gradient_bochner_norm(gram: &SymmetricMatrix, fields: &[&GradientField]) -> Result<f64> {
    let inner = pairwise(fields, |a, b| a.energy_inner(b))?;
    let n = fields.len();
    Ok(gram.weighted_sum(|i, j| inner[i * n + j]).max(0.0).sqrt())
}

/// Gradient of the detail `û_z − u_z` with `û_z` on the uniform refinement
/// of `u_z`'s mesh.
pub fn detail_gradient(solution: &FemFunction, enhanced: &FemFunction) -> Result<GradientField> {
    let d = enhanced.sub(&solution.prolongate(enhanced.mesh())?)?;
    Ok(GradientField::on_refinement(&d, solution.mesh()))
}

/// `μ = ‖Σ_z (û_z − u_z) L_z‖` with `û_z` on the uniform refinement of
/// `u_z`'s mesh. Both slices follow the order of `gram`.
pub fn global_spatial_estimate(
    gram: &SymmetricMatrix,
    solutions: &[FemFunction],
    enhanced: &[FemFunction],
) -> Result<f64> {
    let details: Vec<GradientField> = solutions
        .iter()
        .zip(enhanced)
        .map(|(u, uh)| detail_gradient(u, uh))
        .collect::<Result<_>>()?;
    gradient_bochner_norm(gram, &details.iter().collect::<Vec<_>>())
}

/// `s · Σ_{z,z'} G_{zz'} (u_z, u_{z'})_{L²(D)}`, the mean of `s∫_D u²` for
/// the interpolated solution.
pub fn qoi_estimate(gram: &SymmetricMatrix, solutions: &[FemFunction], scale: f64) -> Result<f64> {
    let fields: Vec<LeafField> = solutions.iter().map(LeafField::new).collect();
    let inner = pairwise(&fields, LeafField::l2_inner)?;
    let n = fields.len();
    Ok(scale * gram.weighted_sum(|i, j| inner[i * n + j]))
}
