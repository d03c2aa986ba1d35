use alloc::string::ToString;
use alloc::vec::Vec;
use core::str::FromStr;
#[allow(unused_imports)] // std, when linked, supplies these as inherent methods
use num_traits::Float;

use super::{point_cmp, signed_area2};
use crate::{Error, Result};

/// The polygonal domains of the benchmark problems.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Domain {
    /// `(0, 1)²`
    UnitSquare,
    /// `(-1, 1)² \ (-1, 0]²`
    LShape,
    /// `(-4, 4)²`
    ScaledSquare,
}

impl Domain {
    pub fn name(&self) -> &'static str {
        match self {
            Domain::UnitSquare => "unit-square",
            Domain::LShape => "l-shape",
            Domain::ScaledSquare => "scaled-square",
        }
    }

    pub fn area(&self) -> f64 {
        match self {
            Domain::UnitSquare => 1.0,
            Domain::LShape => 3.0,
            Domain::ScaledSquare => 64.0,
        }
    }

    /// Whether `p` lies on the boundary (exact for grid-aligned coordinates).
    pub fn on_boundary(&self, p: [f64; 2]) -> bool {
        let [x, y] = p;
        match self {
            Domain::UnitSquare => x == 0.0 || x == 1.0 || y == 0.0 || y == 1.0,
            Domain::ScaledSquare => x.abs() == 4.0 || y.abs() == 4.0,
            Domain::LShape => {
                x.abs() == 1.0 || y.abs() == 1.0 || (x == 0.0 && y <= 0.0) || (y == 0.0 && x <= 0.0)
            }
        }
    }

    pub fn contains(&self, p: [f64; 2]) -> bool {
        let [x, y] = p;
        match self {
            Domain::UnitSquare => (0.0..=1.0).contains(&x) && (0.0..=1.0).contains(&y),
            Domain::ScaledSquare => x.abs() <= 4.0 && y.abs() <= 4.0,
            Domain::LShape => x.abs() <= 1.0 && y.abs() <= 1.0 && !(x < 0.0 && y < 0.0),
        }
    }
}

impl FromStr for Domain {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "unit-square" => Ok(Domain::UnitSquare),
            "l-shape" | "L-shape" => Ok(Domain::LShape),
            "scaled-square" => Ok(Domain::ScaledSquare),
            other => Err(Error::UnknownDomain(other.to_string())),
        }
    }
}

/// The root mesh `T_0` of a bisection forest.
///
/// Triangles are positively oriented and stored as `[a, b, c]` with the
/// refinement edge `a–b`, initialised to the longest edge.
#[derive(Clone, Debug, PartialEq)]
pub struct CoarseMesh {
    domain: Domain,
    resolution: usize,
    vertices: Vec<[f64; 2]>,
    triangles: Vec<[u32; 3]>,
    /// Vertex indices sorted by coordinates.
    sorted: Vec<u32>,
}

impl CoarseMesh {
    /// Builds a coarse mesh from arbitrary positively oriented triangles;
    /// each is rotated so that its longest edge becomes the refinement edge.
    pub fn new(
        domain: Domain,
        resolution: usize,
        vertices: Vec<[f64; 2]>,
        triangles: Vec<[u32; 3]>,
    ) -> Result<Self> {
        let mut tris = Vec::with_capacity(triangles.len());
        for t in triangles {
            if t.iter().any(|&v| v as usize >= vertices.len()) {
                return Err(Error::contract("triangle references a missing vertex"));
            }
            let p = t.map(|v| vertices[v as usize]);
            if signed_area2(p[0], p[1], p[2]) <= 0.0 {
                return Err(Error::contract(
                    "coarse triangles must be positively oriented",
                ));
            }
            let len2 = |a: [f64; 2], b: [f64; 2]| (a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2);
            // edge (t[r], t[r+1]) for rotation r
            let lens = [len2(p[0], p[1]), len2(p[1], p[2]), len2(p[2], p[0])];
            let mut r = 0;
            for k in 1..3 {
                if lens[k] > lens[r] {
                    r = k;
                }
            }
            tris.push([t[r], t[(r + 1) % 3], t[(r + 2) % 3]]);
        }
        let vertices: Vec<[f64; 2]> = vertices
            .into_iter()
            .map(|p| [p[0] + 0.0, p[1] + 0.0])
            .collect();
        let mut sorted: Vec<u32> = (0..vertices.len() as u32).collect();
        sorted.sort_by(|&a, &b| point_cmp(&vertices[a as usize], &vertices[b as usize]));
        if sorted
            .windows(2)
            .any(|w| point_cmp(&vertices[w[0] as usize], &vertices[w[1] as usize]).is_eq())
        {
            return Err(Error::contract("duplicate coarse vertices"));
        }
        Ok(CoarseMesh {
            domain,
            resolution,
            vertices,
            triangles: tris,
            sorted,
        })
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn resolution(&self) -> usize {
        self.resolution
    }

    pub fn vertices(&self) -> &[[f64; 2]] {
        &self.vertices
    }

    pub fn triangles(&self) -> &[[u32; 3]] {
        &self.triangles
    }

    pub(crate) fn find_vertex(&self, p: &[f64; 2]) -> Option<usize> {
        self.sorted
            .binary_search_by(|&i| point_cmp(&self.vertices[i as usize], p))
            .ok()
            .map(|k| self.sorted[k] as usize)
    }
}

/// Uniform right-triangle mesh of `domain` with `resolution` cells per unit
/// side length of the reference square (`(0,1)²` for the unit square,
/// `(-1,1)²` halves for the L-shape, the whole square for `(-4,4)²`).
pub fn initial_mesh(domain: Domain, resolution: usize) -> Result<CoarseMesh> {
    if resolution == 0 {
        return Err(Error::contract("mesh resolution must be at least 1"));
    }
    let n = resolution;
    let (cells, origin, step): (usize, f64, f64) = match domain {
        Domain::UnitSquare => (n, 0.0, 1.0 / n as f64),
        Domain::LShape => (2 * n, -1.0, 1.0 / n as f64),
        Domain::ScaledSquare => (n, -4.0, 8.0 / n as f64),
    };
    let keep = |i: usize, j: usize| !(domain == Domain::LShape && i < n && j < n);
    let mut index = alloc::vec![u32::MAX; (cells + 1) * (cells + 1)];
    let mut vertices = Vec::new();
    let mut id = |i: usize, j: usize, vertices: &mut Vec<[f64; 2]>| {
        let k = j * (cells + 1) + i;
        if index[k] == u32::MAX {
            index[k] = vertices.len() as u32;
            let x = if i == cells {
                origin + step * cells as f64
            } else {
                origin + step * i as f64
            };
            let y = if j == cells {
                origin + step * cells as f64
            } else {
                origin + step * j as f64
            };
            vertices.push([x, y]);
        }
        index[k]
    };
    let mut triangles = Vec::new();
    for j in 0..cells {
        for i in 0..cells {
            if !keep(i, j) {
                continue;
            }
            let p00 = id(i, j, &mut vertices);
            let p10 = id(i + 1, j, &mut vertices);
            let p11 = id(i + 1, j + 1, &mut vertices);
            let p01 = id(i, j + 1, &mut vertices);
            triangles.push([p00, p10, p11]);
            triangles.push([p00, p11, p01]);
        }
    }
    CoarseMesh::new(domain, resolution, vertices, triangles)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_square_counts() {
        let m = initial_mesh(Domain::UnitSquare, 8).unwrap();
        assert_eq!(m.vertices().len(), 81);
        assert_eq!(m.triangles().len(), 128);
    }

    #[test]
    fn l_shape_counts() {
        let m = initial_mesh(Domain::LShape, 4).unwrap();
        assert_eq!(m.vertices().len(), 3 * 25 - 2 * 5);
        assert_eq!(m.triangles().len(), 96);
        assert!(m.vertices().iter().all(|&p| Domain::LShape.contains(p)));
    }

    #[test]
    fn scaled_square_is_affine_image() {
        let a = initial_mesh(Domain::UnitSquare, 8).unwrap();
        let b = initial_mesh(Domain::ScaledSquare, 8).unwrap();
        assert_eq!(a.triangles(), b.triangles());
        for (p, q) in a.vertices().iter().zip(b.vertices()) {
            assert_eq!(q[0], 8.0 * p[0] - 4.0);
            assert_eq!(q[1], 8.0 * p[1] - 4.0);
        }
    }

    #[test]
    fn refinement_edge_is_longest() {
        let m = initial_mesh(Domain::LShape, 2).unwrap();
        for t in m.triangles() {
            let p = t.map(|v| m.vertices()[v as usize]);
            let d = |a: [f64; 2], b: [f64; 2]| (a[0] - b[0]).hypot(a[1] - b[1]);
            assert!(d(p[0], p[1]) >= d(p[1], p[2]) && d(p[0], p[1]) >= d(p[2], p[0]));
            assert!(signed_area2(p[0], p[1], p[2]) > 0.0);
        }
    }

    #[test]
    fn unknown_domain_tag() {
        assert!(matches!(
            "disc".parse::<Domain>(),
            Err(Error::UnknownDomain(_))
        ));
    }
}
