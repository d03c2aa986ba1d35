use alloc::vec;
use alloc::vec::Vec;

use super::triangulation::LeafRecord;
use super::Triangulation;
use crate::{Error, Result};

/// Coarsest common refinement of two meshes over the same coarse mesh.
pub fn overlay(a: &Triangulation, b: &Triangulation) -> Result<Triangulation> {
    overlay_all(&[a, b])
}

/// Coarsest common refinement of several meshes over the same coarse mesh.
pub fn overlay_all(meshes: &[&Triangulation]) -> Result<Triangulation> {
    let first = *meshes
        .first()
        .ok_or(Error::contract("overlay of an empty list of meshes"))?;
    if meshes.iter().any(|m| !m.same_forest(first)) {
        return Err(Error::IncompatibleMesh("meshes do not share a coarse mesh"));
    }
    if meshes.len() == 1 {
        return Ok(first.clone());
    }
    let mut leaves: Vec<LeafRecord> = Vec::new();
    let mut mids = Vec::new();
    for m in meshes {
        leaves.extend((0..m.num_elements()).map(|e| LeafRecord {
            tri: m.element_coords(e),
            id: m.element_ids()[e],
        }));
        mids.extend(m.mid_records());
    }
    leaves.sort_by(|x, y| x.id.cmp(&y.id));
    leaves.dedup_by(|x, y| x.id == y.id);
    // In pre-order every descendant follows its ancestor directly, so a leaf
    // is kept exactly when the next id is not inside it.
    let keep: Vec<bool> = (0..leaves.len())
        .map(|i| {
            leaves
                .get(i + 1)
                .map_or(true, |n| !leaves[i].id.is_strict_ancestor(&n.id))
        })
        .collect();
    let leaves = leaves
        .into_iter()
        .zip(keep)
        .filter_map(|(l, k)| k.then_some(l))
        .collect();
    Ok(Triangulation::build(first.coarse().clone(), leaves, mids))
}

/// Nodal values of a P1 function on `coarse`, interpolated onto the
/// refinement `fine`. Exact, since new vertices are edge midpoints.
pub fn prolongate(
    coarse: &Triangulation,
    values: &[f64],
    fine: &Triangulation,
) -> Result<Vec<f64>> {
    if values.len() != coarse.num_vertices() {
        return Err(Error::DimensionMismatch {
            expected: coarse.num_vertices(),
            got: values.len(),
        });
    }
    if !fine.is_refinement_of(coarse) {
        return Err(Error::IncompatibleMesh("target mesh is not a refinement"));
    }
    let mut out = vec![0.0; fine.num_vertices()];
    let mut pending = Vec::new();
    for (v, p) in fine.vertices().iter().enumerate() {
        match coarse.vertex_index(p) {
            Some(i) => out[v] = values[i],
            None => pending.push(v),
        }
    }
    pending.sort_by_key(|&v| fine.vertex_generation(v));
    for v in pending {
        let [a, b] = fine
            .vertex_parents(v)
            .ok_or(Error::IncompatibleMesh("new vertex without parents"))?;
        out[v] = 0.5 * (out[a as usize] + out[b as usize]);
    }
    Ok(out)
}
