use alloc::sync::Arc;
use alloc::vec::Vec;

use super::{p1_gradients, FemFunction};
use crate::mesh::{signed_area2, ElementId, Triangulation};
use crate::{Error, Result};

/// Calls `visit(i, j, a_is_fine)` for every pair of nested leaves of two
/// pre-ordered leaf lists.
fn merge(
    a: &[ElementId],
    b: &[ElementId],
    mut visit: impl FnMut(usize, usize, bool),
) -> Result<()> {
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        if a[i] == b[j] {
            visit(i, j, true);
            i += 1;
            j += 1;
        } else if a[i].is_strict_ancestor(&b[j]) {
            visit(i, j, false);
            j += 1;
            if j == b.len() || !a[i].is_ancestor_or_self(&b[j]) {
                i += 1;
            }
        } else if b[j].is_strict_ancestor(&a[i]) {
            visit(i, j, true);
            i += 1;
            if i == a.len() || !b[j].is_ancestor_or_self(&a[i]) {
                j += 1;
            }
        } else {
            return Err(Error::IncompatibleMesh(
                "leaf lists do not partition the same forest",
            ));
        }
    }
    if i != a.len() || j != b.len() {
        return Err(Error::IncompatibleMesh(
            "leaf lists do not partition the same forest",
        ));
    }
    Ok(())
}

/// Per-leaf affine pieces of a P1 function, for exact inner products with
/// functions on other meshes of the same bisection forest.
///
/// Leaves of two meshes over the same coarse mesh are either nested or
/// disjoint, so walking both pre-ordered leaf lists together visits the
/// leaves of their overlay without building it.
#[derive(Clone, Debug)]
pub struct LeafField {
    ids: Vec<ElementId>,
    tris: Vec<[[f64; 2]; 3]>,
    values: Vec<[f64; 3]>,
    grads: Vec<[f64; 2]>,
    areas: Vec<f64>,
}

impl LeafField {
    pub fn new(f: &FemFunction) -> Self {
        let mesh = f.mesh();
        let n = mesh.num_elements();
        let mut out = LeafField {
            ids: mesh.element_ids().to_vec(),
            tris: Vec::with_capacity(n),
            values: Vec::with_capacity(n),
            grads: Vec::with_capacity(n),
            areas: Vec::with_capacity(n),
        };
        for (e, t) in mesh.elements().iter().enumerate() {
            let p = mesh.element_coords(e);
            let (g, area) = p1_gradients(&p);
            let v = t.map(|i| f.coeffs()[i as usize]);
            let mut grad = [0.0; 2];
            for i in 0..3 {
                grad[0] += v[i] * g[i][0];
                grad[1] += v[i] * g[i][1];
            }
            out.tris.push(p);
            out.values.push(v);
            out.grads.push(grad);
            out.areas.push(area);
        }
        out
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    fn value_at(&self, e: usize, x: [f64; 2]) -> f64 {
        let p0 = self.tris[e][0];
        self.values[e][0] + self.grads[e][0] * (x[0] - p0[0]) + self.grads[e][1] * (x[1] - p0[1])
    }

    /// `(∇v, ∇w)_{L²}`.
    pub fn energy_inner(&self, other: &LeafField) -> Result<f64> {
        let mut s = 0.0;
        merge(&self.ids, &other.ids, |i, j, fine_self| {
            let area = if fine_self {
                self.areas[i]
            } else {
                other.areas[j]
            };
            s += area
                * (self.grads[i][0] * other.grads[j][0] + self.grads[i][1] * other.grads[j][1]);
        })?;
        Ok(s)
    }

    /// `(v, w)_{L²}`, exact.
    pub fn l2_inner(&self, other: &LeafField) -> Result<f64> {
        let mut s = 0.0;
        merge(&self.ids, &other.ids, |i, j, fine_self| {
            let (fine, fi, coarse, ci) = if fine_self {
                (self, i, other, j)
            } else {
                (other, j, self, i)
            };
            let tri = fine.tris[fi];
            let u = fine.values[fi];
            let w = tri.map(|x| coarse.value_at(ci, x));
            let mut loc = 0.0;
            for a in 0..3 {
                for b in 0..3 {
                    loc += u[a] * w[b] * if a == b { 2.0 } else { 1.0 };
                }
            }
            s += fine.areas[fi] / 12.0 * loc;
        })?;
        Ok(s)
    }
}

/// Piecewise-constant gradient of a P1 function on a mesh, or on the
/// `sub`-fold bisection of every element of a mesh.
///
/// Only the gradients are stored; leaf ids and areas come from the shared
/// mesh, so a field on the uniform refinement costs four gradients per
/// element of the unrefined mesh.
#[derive(Clone, Debug)]
pub struct GradientField {
    mesh: Arc<Triangulation>,
    /// Each mesh element splits into `2^sub` leaves.
    sub: u8,
    /// `2^sub` gradients per mesh element, leaves in pre-order.
    grads: Vec<[f64; 2]>,
}

fn p1_gradient(f: &FemFunction, e: usize) -> [f64; 2] {
    let mesh = f.mesh();
    let (g, _) = p1_gradients(&mesh.element_coords(e));
    let t = mesh.elements()[e];
    let mut grad = [0.0; 2];
    for i in 0..3 {
        let v = f.coeffs()[t[i] as usize];
        grad[0] += v * g[i][0];
        grad[1] += v * g[i][1];
    }
    grad
}

/// Leaf `k` of the `sub`-fold bisection of `id`, in pre-order.
fn sub_leaf(id: ElementId, sub: u8, k: usize) -> ElementId {
    (0..sub).fold(id, |c, level| c.child(((k >> (sub - 1 - level)) & 1) as u8))
}

impl GradientField {
    pub fn new(f: &FemFunction) -> Self {
        let grads = (0..f.mesh().num_elements())
            .map(|e| p1_gradient(f, e))
            .collect();
        GradientField {
            mesh: f.mesh().clone(),
            sub: 0,
            grads,
        }
    }

    /// Stores `f`, which lives on a refinement of `coarse`, relative to
    /// `coarse` when `f`'s mesh is its uniform refinement; otherwise as
    /// [`GradientField::new`].
    pub fn on_refinement(f: &FemFunction, coarse: &Arc<Triangulation>) -> Self {
        let fine = f.mesh();
        let ids = coarse.element_ids();
        let nested = fine.same_forest(coarse)
            && fine.num_elements() == 4 * ids.len()
            && fine
                .element_ids()
                .chunks(4)
                .zip(ids)
                .all(|(c, &p)| c.iter().enumerate().all(|(k, &l)| l == sub_leaf(p, 2, k)));
        if !nested {
            return Self::new(f);
        }
        GradientField {
            mesh: coarse.clone(),
            sub: 2,
            grads: (0..fine.num_elements())
                .map(|e| p1_gradient(f, e))
                .collect(),
        }
    }

    /// Bisections applied to each mesh element to reach the leaves.
    pub fn subdivisions(&self) -> u8 {
        self.sub
    }

    /// Number of leaves.
    pub fn len(&self) -> usize {
        self.grads.len()
    }

    pub fn is_empty(&self) -> bool {
        self.grads.is_empty()
    }

    /// `(∇v, ∇w)_{L²}`.
    pub fn energy_inner(&self, other: &GradientField) -> Result<f64> {
        let (na, nb) = (1usize << self.sub, 1usize << other.sub);
        let (ia, ib) = (self.mesh.element_ids(), other.mesh.element_ids());
        let mut s = 0.0;
        merge(ia, ib, |i, j, fine_self| {
            let (fine, fi, fe) = if fine_self {
                (self, ia[i], i)
            } else {
                (other, ib[j], j)
            };
            let p = fine.mesh.element_coords(fe);
            let area = 0.5 * signed_area2(p[0], p[1], p[2]);
            if self.sub == 0 && other.sub == 0 {
                let (g, h) = (self.grads[i], other.grads[j]);
                s += area * (g[0] * h[0] + g[1] * h[1]);
                return;
            }
            for ka in 0..na {
                let la = sub_leaf(ia[i], self.sub, ka);
                let g = self.grads[i * na + ka];
                for kb in 0..nb {
                    let lb = sub_leaf(ib[j], other.sub, kb);
                    let finer = if la.is_ancestor_or_self(&lb) {
                        lb
                    } else if lb.is_strict_ancestor(&la) {
                        la
                    } else {
                        continue;
                    };
                    let leaf_area = area / (1u64 << (finer.depth() - fi.depth())) as f64;
                    let h = other.grads[j * nb + kb];
                    s += leaf_area * (g[0] * h[0] + g[1] * h[1]);
                }
            }
        })?;
        Ok(s)
    }
}
