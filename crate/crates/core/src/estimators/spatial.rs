use alloc::vec::Vec;
#[allow(unused_imports)] // std, when linked, supplies these as inherent methods
use num_traits::Float;

use crate::fem::quadrature::{map_point, triangle_rule};
use crate::fem::{p1_gradients, CsrMatrix, FemFunction, SolverOptions};
use crate::mesh::midpoint;
use crate::problems::{ParametricProblem, ProblemKind};
use crate::{Error, Result};

/// How local indicators are derived from the detail solution `e`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum LocalScaling {
    /// `|e_ξ|·‖∇φ_ξ‖`, in the units of the energy norm.
    #[default]
    Energy,
    /// `|e_ξ|`.
    Raw,
}

impl LocalScaling {
    pub fn name(&self) -> &'static str {
        match self {
            LocalScaling::Energy => "energy",
            LocalScaling::Raw => "raw",
        }
    }
}

/// Hierarchical estimate at one collocation point.
#[derive(Clone, Debug, PartialEq)]
pub struct SpatialIndicator {
    /// `μ = ‖∇e‖`.
    pub total: f64,
    /// One value per interior edge, in the mesh's interior-edge order.
    pub local: Vec<f64>,
}

/// Galerkin solution of the detail problem.
#[derive(Clone, Debug)]
pub struct DetailSolution {
    /// Coefficients of `e` in the `Y` hat basis.
    pub coeffs: Vec<f64>,
    /// Residual functional `r_ξ = ∫ f φ_ξ − ∫ a ∇u·∇φ_ξ`.
    pub residual: Vec<f64>,
    /// Unweighted `Y` stiffness matrix.
    pub matrix: CsrMatrix,
}

// Local numbering of the six nodes of the uniformly refined element
// [a, b, c]: 3 = mid(b, c), 4 = mid(c, a), 5 = mid(a, b).
const CHILDREN: [[usize; 3]; 4] = [[5, 2, 4], [0, 5, 4], [5, 1, 3], [2, 5, 3]];

/// Solves `(∇e, ∇v) = (f, v) − (a∇u, ∇v)` for all `v ∈ Y` on `u`'s mesh.
pub fn detail_solve(
    problem: &dyn ParametricProblem,
    u: &FemFunction,
    y: &[f64],
) -> Result<DetailSolution> {
    let mesh = u.mesh();
    let ny = mesh.num_interior_edges();
    let weighted = problem.kind() == ProblemKind::ParametricCoefficient;
    let rule = triangle_rule();
    let mut residual = alloc::vec![0.0; ny];
    let mut triplets = Vec::with_capacity(9 * mesh.num_elements());
    for (e, t) in mesh.elements().iter().enumerate() {
        let p = mesh.element_coords(e);
        let ee = mesh.element_edges(e);
        let nodes = [
            p[0],
            p[1],
            p[2],
            midpoint(p[1], p[2]),
            midpoint(p[2], p[0]),
            midpoint(p[0], p[1]),
        ];
        let dof = |l: usize| -> Option<usize> {
            if l < 3 {
                None
            } else {
                mesh.interior_ordinal(ee[l - 3] as usize)
            }
        };
        let (g, _) = p1_gradients(&p);
        let mut gu = [0.0; 2];
        for i in 0..3 {
            let v = u.coeffs()[t[i] as usize];
            gu[0] += v * g[i][0];
            gu[1] += v * g[i][1];
        }
        for child in CHILDREN {
            let q = child.map(|l| nodes[l]);
            let (gc, area) = p1_gradients(&q);
            let mut int_a = 0.0;
            let mut load = [0.0; 3];
            for (l, w) in &rule {
                let x = map_point(&q, l);
                if weighted {
                    let a = problem.coefficient(x, y);
                    if !(a > 0.0) {
                        return Err(Error::CoercivityViolation {
                            value: a,
                            x0: x[0],
                            x1: x[1],
                        });
                    }
                    int_a += w * a;
                }
                let fv = w * problem.rhs(x, y);
                for k in 0..3 {
                    load[k] += fv * l[k];
                }
            }
            let int_a = if weighted { int_a * area } else { area };
            for k in 0..3 {
                let Some(dk) = dof(child[k]) else { continue };
                residual[dk] += load[k] * area - int_a * (gu[0] * gc[k][0] + gu[1] * gc[k][1]);
                for k2 in 0..3 {
                    if let Some(dk2) = dof(child[k2]) {
                        triplets.push((
                            dk,
                            dk2,
                            area * (gc[k][0] * gc[k2][0] + gc[k][1] * gc[k2][1]),
                        ));
                    }
                }
            }
        }
    }
    let matrix = CsrMatrix::from_triplets(ny, &triplets);
    let mask = alloc::vec![true; ny];
    let (coeffs, _) = crate::fem::pcg_masked(
        &matrix,
        &residual,
        &mask,
        alloc::vec![0.0; ny],
        &SolverOptions::default(),
    )?;
    Ok(DetailSolution {
        coeffs,
        residual,
        matrix,
    })
}

/// `μ_z` and its local contributions for the sample solution `u` at `y`.
pub fn spatial_indicator(
    problem: &dyn ParametricProblem,
    u: &FemFunction,
    y: &[f64],
    scaling: LocalScaling,
) -> Result<SpatialIndicator> {
    let d = detail_solve(problem, u, y)?;
    let total = d.matrix.bilinear(&d.coeffs, &d.coeffs).max(0.0).sqrt();
    let local = match scaling {
        LocalScaling::Raw => d.coeffs.iter().map(|e| e.abs()).collect(),
        LocalScaling::Energy => d
            .coeffs
            .iter()
            .zip(d.matrix.diagonal())
            .map(|(e, a)| e.abs() * a.max(0.0).sqrt())
            .collect(),
    };
    Ok(SpatialIndicator { total, local })
}
