//! Adaptive multilevel stochastic collocation finite elements for 2D elliptic
//! problems with random data.
//!
//! The crate is `no_std` and only needs `alloc`. It contains the numerical
//! pieces end to end:
//!
//! - [`sparse_grid`]: monotone multi-index sets, nested Clenshaw–Curtis
//!   grids, combination-technique Lagrange interpolation and exact Gram
//!   matrices in `L²_π` for the uniform measure on `[-1, 1]^M`.
//! - [`mesh`]: conforming triangulations carried as leaves of a
//!   newest-vertex-bisection forest, with local and uniform refinement,
//!   overlays and exact prolongation of P1 fields.
//! - [`fem`]: P1 assembly and a Jacobi-preconditioned conjugate gradient solver.
//! - [`estimators`]: hierarchical spatial indicators, parametric indicators
//!   and the global spatial / parametric error estimates.
//! - [`adaptive`]: marking, per-sample mesh initialisation and the multilevel
//!   and single-level adaptive drivers.
//! - [`problems`]: the benchmark problems, including the analytic
//!   Karhunen–Loève eigenpairs of the separable exponential kernel.
//!
//! IO, configuration files and plotting live in the companion `scfem` crate.
#![no_std]

extern crate alloc;

pub mod adaptive;
pub mod estimators;
pub mod fem;
pub mod mesh;
pub mod problems;
pub mod sparse_grid;

mod error;
mod par;

pub use error::{Error, Result};
