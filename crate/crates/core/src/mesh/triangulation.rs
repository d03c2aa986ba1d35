use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
#[allow(unused_imports)] // std, when linked, supplies these as inherent methods
use num_traits::Float;

use super::{point_cmp, signed_area2, CoarseMesh, ElementId};

pub(crate) const NONE: u32 = u32::MAX;

/// One interior edge together with its midpoint `ξ`.
#[derive(Clone, Debug, PartialEq)]
pub struct InteriorEdge {
    pub edge: usize,
    pub endpoints: [usize; 2],
    pub midpoint: [f64; 2],
    pub elements: [usize; 2],
}

/// Interior edge midpoints of a mesh, in edge order.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct EdgeMidpointSet {
    pub entries: Vec<InteriorEdge>,
}

impl EdgeMidpointSet {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// A leaf triangle with its coordinates, used while (re)building meshes.
#[derive(Clone, Copy, Debug)]
pub(crate) struct LeafRecord {
    pub tri: [[f64; 2]; 3],
    pub id: ElementId,
}

/// A bisection vertex: `m` is the midpoint of `a–b`.
#[derive(Clone, Copy, Debug)]
pub(crate) struct MidRecord {
    pub m: [f64; 2],
    pub a: [f64; 2],
    pub b: [f64; 2],
    pub generation: u32,
}

/// Conforming triangulation, stored as the leaves of a bisection forest.
#[derive(Clone, Debug)]
pub struct Triangulation {
    coarse: Arc<CoarseMesh>,
    vertices: Vec<[f64; 2]>,
    /// Endpoints of the edge a non-coarse vertex bisects.
    parents: Vec<Option<[u32; 2]>>,
    generation: Vec<u32>,
    /// `[a, b, c]`, refinement edge `a–b`, positively oriented.
    elements: Vec<[u32; 3]>,
    ids: Vec<ElementId>,
    edges: Vec<[u32; 2]>,
    /// Local edge `k` is opposite local vertex `k`.
    element_edges: Vec<[u32; 3]>,
    edge_elements: Vec<[u32; 2]>,
    boundary_vertex: Vec<bool>,
    interior_ordinal: Vec<u32>,
    interior_edges: Vec<u32>,
}

impl PartialEq for Triangulation {
    fn eq(&self, other: &Self) -> bool {
        self.same_forest(other) && self.ids == other.ids && self.vertices == other.vertices
    }
}

impl Triangulation {
    /// The unrefined mesh `T_0`.
    pub fn from_coarse(coarse: Arc<CoarseMesh>) -> Self {
        let leaves = coarse
            .triangles()
            .iter()
            .enumerate()
            .map(|(r, t)| LeafRecord {
                tri: t.map(|v| coarse.vertices()[v as usize]),
                id: ElementId::root(r as u32),
            })
            .collect();
        Self::build(coarse, leaves, Vec::new())
    }

    /// Reconstructs the mesh whose leaves are `ids` by replaying bisections.
    pub fn from_leaves(coarse: Arc<CoarseMesh>, ids: &[ElementId]) -> crate::Result<Self> {
        let mut leaves = Vec::with_capacity(ids.len());
        let mut mids = Vec::new();
        for id in ids {
            let t = coarse.triangles().get(id.root_index() as usize).ok_or(
                crate::Error::IncompatibleMesh("element root outside the coarse mesh"),
            )?;
            let mut tri = t.map(|v| coarse.vertices()[v as usize]);
            let mut gens = [0u32; 3];
            for level in 0..id.depth() {
                let m = super::midpoint(tri[0], tri[1]);
                let g = gens[0].max(gens[1]) + 1;
                mids.push(MidRecord {
                    m,
                    a: tri[0],
                    b: tri[1],
                    generation: g,
                });
                let (c0, c1) = super::bisect(tri, m);
                let (g0, g1) = super::bisect(gens, g);
                if (id.path() >> level) & 1 == 0 {
                    tri = c0;
                    gens = g0;
                } else {
                    tri = c1;
                    gens = g1;
                }
            }
            leaves.push(LeafRecord { tri, id: *id });
        }
        let mesh = Self::build(coarse, leaves, mids);
        if mesh.ids.windows(2).any(|w| w[0].is_ancestor_or_self(&w[1])) {
            return Err(crate::Error::IncompatibleMesh("leaf ids overlap"));
        }
        Ok(mesh)
    }

    /// Canonical assembly from leaves and bisection records. Every leaf
    /// vertex must be a coarse vertex or the midpoint of a record.
    pub(crate) fn build(
        coarse: Arc<CoarseMesh>,
        mut leaves: Vec<LeafRecord>,
        mut mids: Vec<MidRecord>,
    ) -> Self {
        mids.sort_by(|x, y| point_cmp(&x.m, &y.m));
        mids.dedup_by(|x, y| point_cmp(&x.m, &y.m).is_eq());
        let n0 = coarse.vertices().len();
        let mut vertices: Vec<[f64; 2]> = coarse.vertices().to_vec();
        vertices.extend(mids.iter().map(|r| r.m));

        let lookup = |p: &[f64; 2]| -> u32 {
            if let Some(i) = coarse.find_vertex(p) {
                return i as u32;
            }
            let k = mids
                .binary_search_by(|r| point_cmp(&r.m, p))
                .expect("leaf vertex is a coarse vertex or a recorded midpoint");
            (n0 + k) as u32
        };

        let mut parents = vec![None; vertices.len()];
        let mut generation = vec![0u32; vertices.len()];
        for (k, r) in mids.iter().enumerate() {
            let (a, b) = (lookup(&r.a), lookup(&r.b));
            parents[n0 + k] = Some([a.min(b), a.max(b)]);
            generation[n0 + k] = r.generation;
        }

        leaves.sort_by(|x, y| x.id.cmp(&y.id));
        let elements: Vec<[u32; 3]> = leaves.iter().map(|l| l.tri.map(|p| lookup(&p))).collect();
        let ids: Vec<ElementId> = leaves.iter().map(|l| l.id).collect();

        let mut mesh = Triangulation {
            coarse,
            vertices,
            parents,
            generation,
            elements,
            ids,
            edges: Vec::new(),
            element_edges: Vec::new(),
            edge_elements: Vec::new(),
            boundary_vertex: Vec::new(),
            interior_ordinal: Vec::new(),
            interior_edges: Vec::new(),
        };
        mesh.build_edges();
        mesh
    }

    fn build_edges(&mut self) {
        let mut half: Vec<(u32, u32, u32, u8)> = Vec::with_capacity(3 * self.elements.len());
        for (e, t) in self.elements.iter().enumerate() {
            for k in 0..3 {
                let a = t[(k + 1) % 3];
                let b = t[(k + 2) % 3];
                half.push((a.min(b), a.max(b), e as u32, k as u8));
            }
        }
        half.sort_unstable();
        let mut edges = Vec::new();
        let mut edge_elements: Vec<[u32; 2]> = Vec::new();
        let mut element_edges = vec![[NONE; 3]; self.elements.len()];
        for h in &half {
            if edges.last() != Some(&[h.0, h.1]) {
                edges.push([h.0, h.1]);
                edge_elements.push([h.2, NONE]);
            } else {
                let last = edge_elements.last_mut().expect("edge pushed above");
                debug_assert_eq!(last[1], NONE, "edge shared by more than two triangles");
                last[1] = h.2;
            }
            element_edges[h.2 as usize][h.3 as usize] = (edges.len() - 1) as u32;
        }
        let mut boundary_vertex = vec![false; self.vertices.len()];
        let mut interior_ordinal = vec![NONE; edges.len()];
        let mut interior_edges = Vec::new();
        for (i, (ed, el)) in edges.iter().zip(&edge_elements).enumerate() {
            if el[1] == NONE {
                boundary_vertex[ed[0] as usize] = true;
                boundary_vertex[ed[1] as usize] = true;
            } else {
                interior_ordinal[i] = interior_edges.len() as u32;
                interior_edges.push(i as u32);
            }
        }
        self.edges = edges;
        self.edge_elements = edge_elements;
        self.element_edges = element_edges;
        self.boundary_vertex = boundary_vertex;
        self.interior_ordinal = interior_ordinal;
        self.interior_edges = interior_edges;
    }

    pub fn coarse(&self) -> &Arc<CoarseMesh> {
        &self.coarse
    }

    pub fn vertices(&self) -> &[[f64; 2]] {
        &self.vertices
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn elements(&self) -> &[[u32; 3]] {
        &self.elements
    }

    pub fn num_elements(&self) -> usize {
        self.elements.len()
    }

    pub fn element_ids(&self) -> &[ElementId] {
        &self.ids
    }

    pub fn element_coords(&self, e: usize) -> [[f64; 2]; 3] {
        self.elements[e].map(|v| self.vertices[v as usize])
    }

    pub fn edges(&self) -> &[[u32; 2]] {
        &self.edges
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    /// Edge indices of element `e`; local edge `k` is opposite vertex `k`,
    /// so entry 2 is the refinement edge.
    pub fn element_edges(&self, e: usize) -> [u32; 3] {
        self.element_edges[e]
    }

    pub fn edge_elements(&self, edge: usize) -> [u32; 2] {
        self.edge_elements[edge]
    }

    pub fn is_boundary_edge(&self, edge: usize) -> bool {
        self.edge_elements[edge][1] == NONE
    }

    pub fn boundary_vertices(&self) -> &[bool] {
        &self.boundary_vertex
    }

    pub fn vertex_parents(&self, v: usize) -> Option<[u32; 2]> {
        self.parents[v]
    }

    pub fn vertex_generation(&self, v: usize) -> u32 {
        self.generation[v]
    }

    /// Position of edge `edge` among the interior edges, if interior.
    pub fn interior_ordinal(&self, edge: usize) -> Option<usize> {
        let o = self.interior_ordinal[edge];
        (o != NONE).then_some(o as usize)
    }

    /// Interior edges in edge order (the `Y`-space numbering).
    pub fn interior_edge_list(&self) -> &[u32] {
        &self.interior_edges
    }

    pub fn num_interior_edges(&self) -> usize {
        self.interior_edges.len()
    }

    pub fn edge_midpoint(&self, edge: usize) -> [f64; 2] {
        let [a, b] = self.edges[edge];
        super::midpoint(self.vertices[a as usize], self.vertices[b as usize])
    }

    pub fn interior_midpoints(&self) -> EdgeMidpointSet {
        EdgeMidpointSet {
            entries: self
                .interior_edges
                .iter()
                .map(|&e| {
                    let e = e as usize;
                    let [a, b] = self.edges[e];
                    let [t0, t1] = self.edge_elements[e];
                    InteriorEdge {
                        edge: e,
                        endpoints: [a as usize, b as usize],
                        midpoint: self.edge_midpoint(e),
                        elements: [t0 as usize, t1 as usize],
                    }
                })
                .collect(),
        }
    }

    /// Index of the vertex at exactly `p`.
    pub fn vertex_index(&self, p: &[f64; 2]) -> Option<usize> {
        if let Some(i) = self.coarse.find_vertex(p) {
            return Some(i);
        }
        let n0 = self.coarse.vertices().len();
        self.vertices[n0..]
            .binary_search_by(|q| point_cmp(q, p))
            .ok()
            .map(|k| n0 + k)
    }

    pub(crate) fn mid_records(&self) -> Vec<MidRecord> {
        let n0 = self.coarse.vertices().len();
        (n0..self.vertices.len())
            .map(|v| {
                let [a, b] = self.parents[v].expect("non-coarse vertices have parents");
                MidRecord {
                    m: self.vertices[v],
                    a: self.vertices[a as usize],
                    b: self.vertices[b as usize],
                    generation: self.generation[v],
                }
            })
            .collect()
    }

    /// Whether both meshes descend from the same coarse mesh.
    pub fn same_forest(&self, other: &Triangulation) -> bool {
        Arc::ptr_eq(&self.coarse, &other.coarse) || *self.coarse == *other.coarse
    }

    /// Every leaf of `self` lies inside a leaf of `coarser`.
    pub fn is_refinement_of(&self, coarser: &Triangulation) -> bool {
        if !self.same_forest(coarser) {
            return false;
        }
        self.ids.iter().all(|s| {
            let k = coarser.ids.partition_point(|c| c <= s);
            k > 0 && coarser.ids[k - 1].is_ancestor_or_self(s)
        })
    }

    pub fn area(&self) -> f64 {
        (0..self.elements.len())
            .map(|e| {
                let [a, b, c] = self.element_coords(e);
                0.5 * signed_area2(a, b, c)
            })
            .sum()
    }

    /// Smallest interior angle over all elements, in radians.
    pub fn min_angle(&self) -> f64 {
        let mut best = f64::INFINITY;
        for e in 0..self.elements.len() {
            let p = self.element_coords(e);
            for k in 0..3 {
                let o = p[k];
                let u = [p[(k + 1) % 3][0] - o[0], p[(k + 1) % 3][1] - o[1]];
                let v = [p[(k + 2) % 3][0] - o[0], p[(k + 2) % 3][1] - o[1]];
                let cross = u[0] * v[1] - u[1] * v[0];
                let dot = u[0] * v[0] + u[1] * v[1];
                best = best.min(cross.abs().atan2(dot));
            }
        }
        best
    }

    /// No hanging nodes: each edge bounds one or two elements, and every
    /// edge with a single element lies on the domain boundary.
    pub fn is_conforming(&self) -> bool {
        let domain = self.coarse.domain();
        let positively_oriented = (0..self.elements.len()).all(|e| {
            let [a, b, c] = self.element_coords(e);
            signed_area2(a, b, c) > 0.0
        });
        positively_oriented
            && (0..self.edges.len()).all(|i| {
                !self.is_boundary_edge(i) || {
                    let [a, b] = self.edges[i];
                    let (pa, pb) = (self.vertices[a as usize], self.vertices[b as usize]);
                    domain.on_boundary(pa)
                        && domain.on_boundary(pb)
                        && domain.on_boundary(self.edge_midpoint(i))
                }
            })
    }
}
