//! A posteriori error estimation.
//!
//! Spatial errors are estimated per collocation point by solving a Laplace
//! problem for the residual in the detail space `Y` spanned by hat functions
//! of the uniform refinement at interior edge midpoints. Parametric errors
//! compare coarse-mesh samples at new sparse-grid points with the current
//! interpolant. Bochner norms `‖Σ_z v_z L_z‖_{L²_π(Γ; X)}` are evaluated
//! exactly as `Σ G_{zz'} (v_z, v_{z'})_X` with the Lagrange Gram matrix.

mod global;
mod parametric;
mod spatial;

pub use global::{
    bochner_norm, detail_gradient, global_spatial_estimate, gradient_bochner_norm, qoi_estimate,
    GlobalEstimates,
};
pub use parametric::{
    global_parametric_estimate, parametric_analysis, parametric_indicators, ParametricAnalysis,
    ParametricIndicator,
};
pub use spatial::{
    detail_solve, spatial_indicator, DetailSolution, LocalScaling, SpatialIndicator,
};
