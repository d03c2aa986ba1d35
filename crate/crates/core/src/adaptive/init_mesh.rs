use alloc::sync::Arc;

use super::marking::dorfler_single;
use super::AdaptiveConfig;
use crate::estimators::{spatial_indicator, SpatialIndicator};
use crate::fem::FemFunction;
use crate::mesh::Triangulation;
use crate::problems::{solve_sample, ParametricProblem};
use crate::sparse_grid::CollocationPoint;
use crate::{Error, Result};

/// Mesh, solution and indicator produced for a newly activated point.
#[derive(Clone, Debug)]
pub struct InitResult {
    pub mesh: Arc<Triangulation>,
    pub solution: FemFunction,
    pub indicator: SpatialIndicator,
    /// Number of refinements performed.
    pub iterations: usize,
}

/// SOLVE → ESTIMATE → MARK → REFINE from `T_0` for the new point `z` until
/// `μ_z·weight < tol`, marking with the squared local indicators. `weight`
/// is `‖L_z‖` in the enlarged sparse grid and `tol` the mean weighted
/// estimate of the previously active points. `coarse` is a cached solution
/// on `T_0`, if available. With `tol = 0` and a vanishing estimate the
/// coarse mesh is returned.
pub fn init_mesh_for_point(
    problem: &dyn ParametricProblem,
    z: &CollocationPoint,
    t0: &Arc<Triangulation>,
    coarse: Option<&FemFunction>,
    tol: f64,
    weight: f64,
    cfg: &AdaptiveConfig,
) -> Result<InitResult> {
    let y = z.coords();
    let mut mesh = t0.clone();
    let mut u = match coarse {
        Some(u) => u.clone(),
        None => solve_sample(problem, &mesh, y, None, &cfg.solver)?,
    };
    let mut n = 0;
    loop {
        let indicator = spatial_indicator(problem, &u, y, cfg.local_scaling)?;
        let estimate = indicator.total * weight;
        if estimate < tol || indicator.total == 0.0 {
            return Ok(InitResult {
                mesh,
                solution: u,
                indicator,
                iterations: n,
            });
        }
        if n == cfg.init_max_iterations {
            return Err(Error::InitializationFailure {
                iterations: n,
                estimate,
                tol,
            });
        }
        let marked = dorfler_single(&mesh, &indicator.local, cfg.theta_init, 2);
        let edges: alloc::vec::Vec<usize> = marked
            .iter()
            .map(|&k| mesh.interior_edge_list()[k] as usize)
            .collect();
        let next = Arc::new(mesh.refine(&edges)?);
        let guess = u.prolongate(&next)?;
        u = solve_sample(problem, &next, y, Some(guess.coeffs()), &cfg.solver)?;
        mesh = next;
        n += 1;
    }
}
