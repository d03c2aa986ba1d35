//! Conforming triangulations refined by newest-vertex bisection.
//!
//! Every [`Triangulation`] is the set of leaves of a bisection forest over a
//! shared [`CoarseMesh`]. Leaves are identified by [`ElementId`] (root plus
//! the path of child choices), so two meshes from the same coarse mesh can
//! be compared, overlaid and prolongated exactly. Arrays are kept in a
//! canonical order: elements in forest pre-order, coarse vertices first and
//! the remaining vertices sorted by coordinates. Two meshes with the same
//! leaves therefore have identical arrays.
//!
//! Vertex identity relies on midpoints being computed as `(a + b) / 2` from
//! the same endpoints every time, which is exact for the dyadic coordinates
//! of the built-in domains and deterministic otherwise.

mod coarse;
mod element_id;
mod overlay;
mod refine;
mod triangulation;

pub use coarse::{initial_mesh, CoarseMesh, Domain};
pub use element_id::ElementId;
pub use overlay::{overlay, overlay_all, prolongate};
pub use triangulation::{EdgeMidpointSet, InteriorEdge, Triangulation};

use core::cmp::Ordering;

/// Total order on points, `x` first.
pub(crate) fn point_cmp(a: &[f64; 2], b: &[f64; 2]) -> Ordering {
    a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1]))
}

pub(crate) fn midpoint(a: [f64; 2], b: [f64; 2]) -> [f64; 2] {
    // `+ 0.0` turns a possible -0.0 into +0.0 so keys stay canonical.
    [(a[0] + b[0]) * 0.5 + 0.0, (a[1] + b[1]) * 0.5 + 0.0]
}

/// Twice the signed area of `(a, b, c)`.
pub(crate) fn signed_area2(a: [f64; 2], b: [f64; 2], c: [f64; 2]) -> f64 {
    (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
}

/// Children of `[a, b, c]` (refinement edge `a–b`) when bisected at `m`.
/// Both children keep the orientation and have `m` as newest vertex.
pub(crate) fn bisect<T: Copy>(tri: [T; 3], m: T) -> ([T; 3], [T; 3]) {
    let [a, b, c] = tri;
    ([c, a, m], [b, c, m])
}

#[cfg(test)]
mod tests;
