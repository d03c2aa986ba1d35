//! Adaptive drivers.
//!
//! [`run_multilevel`] gives every collocation point its own mesh: spatial
//! steps refine the meshes selected by a cumulative Dörfler criterion on
//! Lagrange-weighted local indicators, parametric steps enrich the index set
//! and build meshes for new points with [`init_mesh_for_point`]. Parametric
//! indicators always use samples on the coarsest mesh `T_0`.
//! [`run_single_level`] keeps one mesh shared by all points.

mod config;
mod driver;
mod init_mesh;
mod marking;
mod trace;

pub use config::{AdaptiveConfig, Mode};
pub use driver::{
    run, run_multilevel, run_single_level, AdaptiveOutcome, CollocationState, RunStats,
};
pub use init_mesh::{init_mesh_for_point, InitResult};
pub use marking::{dorfler_prefix, mark, Marking, WeightedIndicator};
pub use trace::{AdaptiveTrace, IterationRecord, NoObserver, Observer, RefinementKind};
