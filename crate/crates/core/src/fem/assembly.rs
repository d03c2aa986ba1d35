use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use super::quadrature::{map_point, triangle_rule};
use super::CsrMatrix;
use crate::mesh::{signed_area2, Triangulation};
use crate::{par, Error, Result};

/// Gradients of the three barycentric hat functions and the area of `p`.
pub fn p1_gradients(p: &[[f64; 2]; 3]) -> ([[f64; 2]; 3], f64) {
    let a2 = signed_area2(p[0], p[1], p[2]);
    let mut g = [[0.0; 2]; 3];
    for (i, gi) in g.iter_mut().enumerate() {
        let (j, k) = ((i + 1) % 3, (i + 2) % 3);
        *gi = [(p[j][1] - p[k][1]) / a2, (p[k][0] - p[j][0]) / a2];
    }
    (g, 0.5 * a2)
}

fn dot(a: [f64; 2], b: [f64; 2]) -> f64 {
    a[0] * b[0] + a[1] * b[1]
}

/// `∫_T a` by quadrature, rejecting nonpositive samples.
fn coefficient_integral(
    p: &[[f64; 2]; 3],
    area: f64,
    a: &(impl Fn([f64; 2]) -> f64 + ?Sized),
) -> Result<f64> {
    let mut s = 0.0;
    for (l, w) in triangle_rule() {
        let x = map_point(p, &l);
        let v = a(x);
        if !(v > 0.0) {
            return Err(Error::CoercivityViolation {
                value: v,
                x0: x[0],
                x1: x[1],
            });
        }
        s += w * v;
    }
    Ok(s * area)
}

/// `A_ij = ∫ a ∇φ_i·∇φ_j` over all vertices (boundary rows included).
pub fn assemble_stiffness<A>(mesh: &Triangulation, a: A) -> Result<CsrMatrix>
where
    A: Fn([f64; 2]) -> f64 + Sync + Send,
{
    let elements: Vec<usize> = (0..mesh.num_elements()).collect();
    let locals = par::try_map(&elements, |&e| {
        let p = mesh.element_coords(e);
        let (g, area) = p1_gradients(&p);
        let ia = coefficient_integral(&p, area, &a)?;
        let mut k = [[0.0; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                k[i][j] = ia * dot(g[i], g[j]);
            }
        }
        Ok(k)
    })?;
    let mut m = CsrMatrix::pattern_from_mesh(mesh);
    for (t, k) in mesh.elements().iter().zip(&locals) {
        for i in 0..3 {
            for j in 0..3 {
                m.add(t[i] as usize, t[j] as usize, k[i][j]);
            }
        }
    }
    Ok(m)
}

/// Exact P1 mass matrix `M_ij = ∫ φ_i φ_j`.
pub fn assemble_mass(mesh: &Triangulation) -> CsrMatrix {
    let mut m = CsrMatrix::pattern_from_mesh(mesh);
    for (e, t) in mesh.elements().iter().enumerate() {
        let area = 0.5 * {
            let [a, b, c] = mesh.element_coords(e);
            signed_area2(a, b, c)
        };
        for i in 0..3 {
            for j in 0..3 {
                let v = if i == j { area / 6.0 } else { area / 12.0 };
                m.add(t[i] as usize, t[j] as usize, v);
            }
        }
    }
    m
}

/// `b_i = ∫ f φ_i` with the degree-5 rule.
pub fn assemble_load<F>(mesh: &Triangulation, f: F) -> Vec<f64>
where
    F: Fn([f64; 2]) -> f64 + Sync + Send,
{
    let rule = triangle_rule();
    let elements: Vec<usize> = (0..mesh.num_elements()).collect();
    let locals = par::map(&elements, |&e| {
        let p = mesh.element_coords(e);
        let area = 0.5 * signed_area2(p[0], p[1], p[2]);
        let mut b = [0.0; 3];
        for (l, w) in &rule {
            let v = w * f(map_point(&p, l));
            for i in 0..3 {
                b[i] += v * l[i];
            }
        }
        b.map(|x| x * area)
    });
    let mut out = vec![0.0; mesh.num_vertices()];
    for (t, b) in mesh.elements().iter().zip(&locals) {
        for i in 0..3 {
            out[t[i] as usize] += b[i];
        }
    }
    out
}

/// Discrete sample problem `−∇·(a∇u) = f`, `u = 0` on the boundary.
#[derive(Clone, Debug)]
pub struct SparseSystem {
    mesh: Arc<Triangulation>,
    matrix: CsrMatrix,
    rhs: Vec<f64>,
    free_dofs: Vec<usize>,
}

impl SparseSystem {
    pub fn assemble<A, F>(mesh: &Arc<Triangulation>, a: A, f: F) -> Result<Self>
    where
        A: Fn([f64; 2]) -> f64 + Sync + Send,
        F: Fn([f64; 2]) -> f64 + Sync + Send,
    {
        let matrix = assemble_stiffness(mesh, a)?;
        let rhs = assemble_load(mesh, f);
        Ok(Self::from_parts(mesh.clone(), matrix, rhs))
    }

    /// Wraps an assembled matrix and load vector; Dirichlet vertices are
    /// taken from the mesh.
    pub fn from_parts(mesh: Arc<Triangulation>, matrix: CsrMatrix, rhs: Vec<f64>) -> Self {
        let free_dofs = mesh
            .boundary_vertices()
            .iter()
            .enumerate()
            .filter_map(|(i, &b)| (!b).then_some(i))
            .collect();
        SparseSystem {
            mesh,
            matrix,
            rhs,
            free_dofs,
        }
    }

    pub fn mesh(&self) -> &Arc<Triangulation> {
        &self.mesh
    }

    pub fn matrix(&self) -> &CsrMatrix {
        &self.matrix
    }

    pub fn rhs(&self) -> &[f64] {
        &self.rhs
    }

    pub fn free_dofs(&self) -> &[usize] {
        &self.free_dofs
    }
}
