//! Continuous piecewise-linear finite elements with homogeneous Dirichlet
//! conditions: assembly, a Jacobi-preconditioned CG solver, and the energy
//! (`‖∇·‖`) and L² inner products of nodal functions.

mod assembly;
mod csr;
mod function;
mod leaf_field;
pub mod quadrature;
mod solver;

pub use assembly::{assemble_load, assemble_mass, assemble_stiffness, p1_gradients, SparseSystem};
pub use csr::CsrMatrix;
pub use function::FemFunction;
pub use leaf_field::{GradientField, LeafField};
pub(crate) use solver::pcg as pcg_masked;
pub use solver::{solve, solve_with, SolveStats, SolverOptions};

#[cfg(test)]
mod tests;
