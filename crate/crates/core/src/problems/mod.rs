//! Parametric model problems: the trait consumed by the adaptive drivers
//! and the three benchmark problems.

mod exp_kl;
mod fourier;
mod kl;
mod one_peak;

pub use exp_kl::ExpKlProblem;
pub use fourier::{fourier_order, FourierProblem};
pub use kl::{kl_eigenpairs_1d, kl_eigenpairs_2d, KlExpansion, KlMode1d, KlMode2d, Parity};
pub use one_peak::{one_peak_reference_qoi, OnePeakProblem};

use crate::mesh::Domain;

/// Where the parameters enter the PDE.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProblemKind {
    /// `−∇·(a(·,y)∇u) = f(·,y)`; the residual of the detail problem is
    /// weighted with `a`.
    ParametricCoefficient,
    /// `−Δu = f(·,y)`; the coefficient is identically 1.
    ParametricRhs,
}

/// A parametric elliptic problem with homogeneous Dirichlet conditions and
/// parameters `y ∈ [−1, 1]^M` under the uniform measure.
pub trait ParametricProblem: Send + Sync {
    fn name(&self) -> &str;

    fn kind(&self) -> ProblemKind;

    /// `M`.
    fn parameter_dim(&self) -> usize;

    fn domain(&self) -> Domain;

    /// Cells per unit side used for the initial mesh `T_0`.
    fn default_resolution(&self) -> usize;

    fn coefficient(&self, x: [f64; 2], y: &[f64]) -> f64;

    fn rhs(&self, x: [f64; 2], y: &[f64]) -> f64;

    fn exact_solution(&self, _x: [f64; 2], _y: &[f64]) -> Option<f64> {
        None
    }

    /// `(a_min, a_max)` over `D × Γ`, when known.
    fn coefficient_bounds(&self) -> Option<(f64, f64)> {
        None
    }

    /// Factor `s` for the quantity of interest `s·E[∫_D u²]`, if the problem
    /// defines one.
    fn qoi_scale(&self) -> Option<f64> {
        None
    }

    fn reference_qoi(&self) -> Option<f64> {
        None
    }
}

/// Galerkin approximation of the sample problem at `y` on `mesh`,
/// optionally warm-started from nodal values on the same mesh.
pub fn solve_sample(
    problem: &dyn ParametricProblem,
    mesh: &alloc::sync::Arc<crate::mesh::Triangulation>,
    y: &[f64],
    guess: Option<&[f64]>,
    opts: &crate::fem::SolverOptions,
) -> crate::Result<crate::fem::FemFunction> {
    if y.len() != problem.parameter_dim() {
        return Err(crate::Error::DimensionMismatch {
            expected: problem.parameter_dim(),
            got: y.len(),
        });
    }
    let system = match problem.kind() {
        ProblemKind::ParametricCoefficient => crate::fem::SparseSystem::assemble(
            mesh,
            |x| problem.coefficient(x, y),
            |x| problem.rhs(x, y),
        )?,
        ProblemKind::ParametricRhs => {
            crate::fem::SparseSystem::assemble(mesh, |_| 1.0, |x| problem.rhs(x, y))?
        }
    };
    crate::fem::solve_with(&system, opts, guess).map(|(u, _)| u)
}

#[cfg(test)]
mod tests;
