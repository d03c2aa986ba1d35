use alloc::vec::Vec;

use super::CollocationState;
use crate::sparse_grid::{MultiIndex, SparseGridBasis};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RefinementKind {
    Spatial,
    Parametric,
}

impl RefinementKind {
    pub fn name(&self) -> &'static str {
        match self {
            RefinementKind::Spatial => "spatial",
            RefinementKind::Parametric => "parametric",
        }
    }
}

/// State and decisions of one iteration `ℓ`.
#[derive(Clone, Debug, PartialEq)]
pub struct IterationRecord {
    pub iteration: usize,
    /// `None` on the final iteration, which stops instead of refining.
    pub refinement: Option<RefinementKind>,
    pub index_set: Vec<MultiIndex>,
    pub num_points: usize,
    /// Vertex counts of the meshes of the points of `C_ℓ`, in point order.
    pub mesh_sizes: Vec<usize>,
    /// `Σ_z #vertices(T_ℓz)`.
    pub total_dofs: usize,
    /// `Σ_z μ_ℓz ‖L_ℓz‖`.
    pub spatial_sum: f64,
    /// `Σ_ν τ̃_ℓν`.
    pub parametric_sum: f64,
    pub mu: Option<f64>,
    pub tau: Option<f64>,
    pub qoi: Option<f64>,
    /// Number of marked midpoints (spatial) or indices (parametric).
    pub marked: usize,
}

impl IterationRecord {
    pub fn estimate(&self) -> Option<f64> {
        Some(self.mu? + self.tau?)
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct AdaptiveTrace {
    pub records: Vec<IterationRecord>,
}

/// Receives each record as soon as it is final.
pub trait Observer {
    fn on_iteration(&mut self, record: &IterationRecord);

    /// Sees the solved states of iteration `record.iteration` before any
    /// refinement; `record.refinement` is not yet set.
    fn on_states(
        &mut self,
        _record: &IterationRecord,
        _basis: &SparseGridBasis,
        _states: &[CollocationState],
    ) {
    }
}

pub struct NoObserver;

impl Observer for NoObserver {
    fn on_iteration(&mut self, _record: &IterationRecord) {}
}
