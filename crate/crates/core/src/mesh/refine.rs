use alloc::vec;
use alloc::vec::Vec;

use super::triangulation::{LeafRecord, MidRecord, NONE};
use super::{bisect, midpoint, Triangulation};
use crate::{Error, Result};

impl Triangulation {
    /// Smallest NVB refinement in which every marked edge is bisected.
    ///
    /// `marked` holds edge indices of interior edges (the midpoints `ξ` of
    /// `N⁺`); boundary edges may still be bisected by the closure.
    pub fn refine(&self, marked: &[usize]) -> Result<Triangulation> {
        let mut flags = vec![false; self.num_edges()];
        for &e in marked {
            if e >= self.num_edges() || self.is_boundary_edge(e) {
                return Err(Error::contract(
                    "marked midpoint is not an interior edge midpoint",
                ));
            }
            flags[e] = true;
        }
        Ok(self.refine_flags(flags))
    }

    /// Bisects every edge of every element (three bisections per triangle).
    pub fn uniform_refine(&self) -> Triangulation {
        self.refine_flags(vec![true; self.num_edges()])
    }

    fn refine_flags(&self, mut marked: Vec<bool>) -> Triangulation {
        if !marked.iter().any(|&m| m) {
            return self.clone();
        }
        // closure: an element with any marked edge must bisect its refinement edge
        let mut queue: Vec<u32> = (0..self.num_elements() as u32)
            .filter(|&e| {
                self.element_edges(e as usize)
                    .iter()
                    .any(|&k| marked[k as usize])
            })
            .collect();
        while let Some(e) = queue.pop() {
            let ee = self.element_edges(e as usize);
            let r = ee[2] as usize;
            if !marked[r] && (marked[ee[0] as usize] || marked[ee[1] as usize]) {
                marked[r] = true;
                for t in self.edge_elements(r) {
                    if t != NONE && t != e {
                        queue.push(t);
                    }
                }
            }
        }

        let verts = self.vertices();
        let mut mids = self.mid_records();
        let mut edge_mid = vec![[0.0; 2]; self.num_edges()];
        for (i, &[a, b]) in self.edges().iter().enumerate() {
            if marked[i] {
                let (pa, pb) = (verts[a as usize], verts[b as usize]);
                let m = midpoint(pa, pb);
                edge_mid[i] = m;
                mids.push(MidRecord {
                    m,
                    a: pa,
                    b: pb,
                    generation: self
                        .vertex_generation(a as usize)
                        .max(self.vertex_generation(b as usize))
                        + 1,
                });
            }
        }

        let mut leaves = Vec::with_capacity(2 * self.num_elements());
        for e in 0..self.num_elements() {
            let tri = self.element_coords(e);
            let id = self.element_ids()[e];
            let ee = self.element_edges(e);
            if !marked[ee[2] as usize] {
                leaves.push(LeafRecord { tri, id });
                continue;
            }
            let (left, right) = bisect(tri, edge_mid[ee[2] as usize]);
            // left = [c, a, m] has refinement edge c–a (local edge 1),
            // right = [b, c, m] has refinement edge b–c (local edge 0).
            for (child, which, edge) in [(left, 0u8, ee[1]), (right, 1u8, ee[0])] {
                let cid = id.child(which);
                if marked[edge as usize] {
                    let (g0, g1) = bisect(child, edge_mid[edge as usize]);
                    leaves.push(LeafRecord {
                        tri: g0,
                        id: cid.child(0),
                    });
                    leaves.push(LeafRecord {
                        tri: g1,
                        id: cid.child(1),
                    });
                } else {
                    leaves.push(LeafRecord {
                        tri: child,
                        id: cid,
                    });
                }
            }
        }
        Triangulation::build(self.coarse().clone(), leaves, mids)
    }
}
