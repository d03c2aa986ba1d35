use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use super::clenshaw_curtis::{barycentric_weights, lagrange_1d, level_size, Knot};
use super::gauss_legendre::gauss_legendre;
use super::multi_index::{combination_coeffs, MultiIndex, MultiIndexSet};
use crate::{Error, Result};

/// A sparse-grid point. Identity, equality and ordering use the exact knot
/// keys only; `coords` is derived from them.
#[derive(Clone, Debug)]
pub struct CollocationPoint {
    knots: Vec<Knot>,
    coords: Vec<f64>,
}

impl CollocationPoint {
    pub fn from_knots(knots: Vec<Knot>) -> Self {
        let coords = knots.iter().map(Knot::coordinate).collect();
        CollocationPoint { knots, coords }
    }

    /// The mean point `(0, …, 0)`.
    pub fn center(dim: usize) -> Self {
        Self::from_knots(vec![Knot::at(1, 0).expect("level 1 exists"); dim])
    }

    pub fn knots(&self) -> &[Knot] {
        &self.knots
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.knots.len()
    }

    /// Points of `C^(ν)` in lexicographic order.
    pub fn tensor_grid(nu: &MultiIndex) -> Vec<CollocationPoint> {
        let per_dim: Vec<Vec<Knot>> = nu
            .entries()
            .iter()
            .map(|&l| Knot::all_at(l).expect("multi-index levels are valid"))
            .collect();
        let mut out = Vec::new();
        for_each_tuple(&per_dim.iter().map(Vec::len).collect::<Vec<_>>(), |tuple| {
            out.push(CollocationPoint::from_knots(
                tuple.iter().zip(&per_dim).map(|(&i, ks)| ks[i]).collect(),
            ));
        });
        out
    }

    /// Whether the point belongs to the tensor grid `C^(ν)`.
    pub fn in_tensor_grid(&self, nu: &MultiIndex) -> bool {
        self.knots
            .iter()
            .zip(nu.entries())
            .all(|(k, &l)| k.first_level() <= l)
    }
}

impl PartialEq for CollocationPoint {
    fn eq(&self, other: &Self) -> bool {
        self.knots == other.knots
    }
}

impl Eq for CollocationPoint {}

impl Ord for CollocationPoint {
    fn cmp(&self, other: &Self) -> Ordering {
        self.knots.cmp(&other.knots)
    }
}

impl PartialOrd for CollocationPoint {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Visits every tuple of `0..sizes[m]` in lexicographic order (last index fastest).
pub(crate) fn for_each_tuple(sizes: &[usize], mut f: impl FnMut(&[usize])) {
    if sizes.iter().any(|&s| s == 0) {
        return;
    }
    let mut t = vec![0usize; sizes.len()];
    loop {
        f(&t);
        let mut m = sizes.len();
        loop {
            if m == 0 {
                return;
            }
            m -= 1;
            t[m] += 1;
            if t[m] < sizes[m] {
                break;
            }
            t[m] = 0;
        }
    }
}

/// Dense symmetric matrix stored row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct SymmetricMatrix {
    n: usize,
    data: Vec<f64>,
}

impl SymmetricMatrix {
    pub fn zeros(n: usize) -> Self {
        SymmetricMatrix {
            n,
            data: vec![0.0; n * n],
        }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    pub(crate) fn add(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.n + j] += v;
    }

    /// Principal submatrix on `rows` (in the given order).
    pub fn restrict(&self, rows: &[usize]) -> SymmetricMatrix {
        let mut out = SymmetricMatrix::zeros(rows.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in rows.iter().enumerate() {
                out.data[a * rows.len() + b] = self.get(i, j);
            }
        }
        out
    }

    /// `Σ_{ij} G_ij · inner(i, j)` accumulated in a fixed order using symmetry.
    pub fn weighted_sum(&self, mut inner: impl FnMut(usize, usize) -> f64) -> f64 {
        let mut total = 0.0;
        for i in 0..self.n {
            total += self.get(i, i) * inner(i, i);
            for j in (i + 1)..self.n {
                let g = self.get(i, j);
                if g != 0.0 {
                    total += 2.0 * g * inner(i, j);
                }
            }
        }
        total
    }
}

#[derive(Clone, Debug)]
struct Term {
    index: MultiIndex,
    coeff: i64,
    /// Positions in `points` of the tensor grid of `index`, lexicographic.
    point_ids: Vec<u32>,
}

/// Lagrange basis of the sparse grid of a monotone index set.
#[derive(Clone, Debug)]
pub struct SparseGridBasis {
    index_set: MultiIndexSet,
    points: Vec<CollocationPoint>,
    terms: Vec<Term>,
    /// Nodes and barycentric weights per level, index 0 unused.
    nodes: Vec<(Vec<f64>, Vec<f64>)>,
}

impl SparseGridBasis {
    pub fn new(index_set: MultiIndexSet) -> Result<Self> {
        if !index_set.is_monotone() {
            return Err(Error::contract(
                "sparse grid basis needs a monotone index set",
            ));
        }
        let points = super::grid_points(&index_set);
        let max_level = index_set.max_levels().into_iter().max().unwrap_or(1);
        let mut nodes = vec![(Vec::new(), Vec::new())];
        for level in 1..=max_level {
            let n = level_size(level)?;
            nodes.push((super::cc_points(level)?, barycentric_weights(n)));
        }
        let terms = combination_coeffs(&index_set)
            .into_iter()
            .map(|(index, coeff)| {
                let point_ids = CollocationPoint::tensor_grid(&index)
                    .iter()
                    .map(|p| {
                        points
                            .binary_search(p)
                            .expect("tensor point is in the grid") as u32
                    })
                    .collect();
                Term {
                    index,
                    coeff,
                    point_ids,
                }
            })
            .collect();
        Ok(SparseGridBasis {
            index_set,
            points,
            terms,
            nodes,
        })
    }

    pub fn index_set(&self) -> &MultiIndexSet {
        &self.index_set
    }

    pub fn dim(&self) -> usize {
        self.index_set.dim()
    }

    pub fn points(&self) -> &[CollocationPoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn position(&self, z: &CollocationPoint) -> Option<usize> {
        self.points.binary_search(z).ok()
    }

    /// Nonzero combination coefficients `c_ν`.
    pub fn combination_coeffs(&self) -> impl Iterator<Item = (&MultiIndex, i64)> + '_ {
        self.terms.iter().map(|t| (&t.index, t.coeff))
    }

    fn check_dim(&self, y: &[f64]) -> Result<()> {
        if y.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: y.len(),
            });
        }
        Ok(())
    }

    /// 1D Lagrange values `table[m][level][k] = ℓ^(level)_k(y_m)`.
    fn tables(&self, y: &[f64]) -> Vec<Vec<Vec<f64>>> {
        let max_levels = self.index_set.max_levels();
        y.iter()
            .zip(&max_levels)
            .map(|(&ym, &lmax)| {
                let mut per_level = vec![Vec::new()];
                for level in 1..=lmax as usize {
                    let (x, w) = &self.nodes[level];
                    let mut out = vec![0.0; x.len()];
                    lagrange_1d(x, w, ym, &mut out);
                    per_level.push(out);
                }
                per_level
            })
            .collect()
    }

    /// `L_z(y)` for every grid point, in point order.
    pub fn lagrange_values(&self, y: &[f64]) -> Result<Vec<f64>> {
        self.check_dim(y)?;
        let tables = self.tables(y);
        let mut out = vec![0.0; self.points.len()];
        for term in &self.terms {
            let sizes: Vec<usize> = term
                .index
                .entries()
                .iter()
                .map(|&l| self.nodes[l as usize].0.len())
                .collect();
            let c = term.coeff as f64;
            let mut j = 0;
            for_each_tuple(&sizes, |tuple| {
                let mut prod = c;
                for (m, &k) in tuple.iter().enumerate() {
                    prod *= tables[m][term.index.entries()[m] as usize][k];
                }
                out[term.point_ids[j] as usize] += prod;
                j += 1;
            });
        }
        Ok(out)
    }

    /// `L_z(y)` for a single grid point `z`.
    pub fn evaluate_lagrange(&self, z: &CollocationPoint, y: &[f64]) -> Result<f64> {
        if self.position(z).is_none() {
            return Err(Error::contract("point is not in the sparse grid"));
        }
        self.check_dim(y)?;
        let tables = self.tables(y);
        let mut total = 0.0;
        for term in self.terms.iter().filter(|t| z.in_tensor_grid(&t.index)) {
            let mut prod = term.coeff as f64;
            for (m, (k, &l)) in z.knots().iter().zip(term.index.entries()).enumerate() {
                let idx = k.index_at(l).expect("knot present at this level");
                prod *= tables[m][l as usize][idx];
            }
            total += prod;
        }
        Ok(total)
    }

    /// `Σ_z values[z] L_z(y)` with `values` aligned to [`points`](Self::points).
    pub fn interpolate(&self, values: &[f64], y: &[f64]) -> Result<f64> {
        if values.len() != self.points.len() {
            return Err(Error::contract("one value per grid point is required"));
        }
        let l = self.lagrange_values(y)?;
        Ok(l.iter().zip(values).map(|(a, b)| a * b).sum())
    }

    /// 1D Gram blocks `∫ ℓ^(a)_i ℓ^(b)_j dy/2` for all level pairs in use,
    /// from Gauss–Legendre with `max(mf(a), mf(b))` nodes (exact).
    fn mass_blocks(&self) -> BTreeMap<(u32, u32), Vec<Vec<f64>>> {
        let mut levels = alloc::collections::BTreeSet::new();
        for t in &self.terms {
            levels.extend(t.index.entries().iter().copied());
        }
        let levels: Vec<u32> = levels.into_iter().collect();
        let mut out = BTreeMap::new();
        for &a in &levels {
            for &b in &levels {
                if b < a {
                    continue;
                }
                let (xa, wa) = &self.nodes[a as usize];
                let (xb, wb) = &self.nodes[b as usize];
                let (q, qw) = gauss_legendre(xa.len().max(xb.len()));
                let mut block = vec![vec![0.0; xb.len()]; xa.len()];
                let mut la = vec![0.0; xa.len()];
                let mut lb = vec![0.0; xb.len()];
                for (&y, &w) in q.iter().zip(&qw) {
                    lagrange_1d(xa, wa, y, &mut la);
                    lagrange_1d(xb, wb, y, &mut lb);
                    for (row, &u) in block.iter_mut().zip(&la) {
                        for (cell, &v) in row.iter_mut().zip(&lb) {
                            *cell += 0.5 * w * u * v;
                        }
                    }
                }
                if a != b {
                    let transposed = (0..xb.len())
                        .map(|j| (0..xa.len()).map(|i| block[i][j]).collect())
                        .collect();
                    out.insert((b, a), transposed);
                }
                out.insert((a, b), block);
            }
        }
        out
    }

    /// Gram matrix `G_{zz'} = ∫_Γ L_z L_{z'} dπ` for the uniform product
    /// measure. The integrand is separable term by term, so the tensor
    /// Gauss–Legendre rule factors into exact 1D blocks.
    pub fn gram(&self) -> SymmetricMatrix {
        let blocks = self.mass_blocks();
        let n = self.points.len();
        let mut g = SymmetricMatrix::zeros(n);
        let local: Vec<Vec<Vec<usize>>> = self.terms.iter().map(|t| self.local_tuples(t)).collect();
        for (a, ta) in self.terms.iter().enumerate() {
            for (b, tb) in self.terms.iter().enumerate().skip(a) {
                let c = (ta.coeff * tb.coeff) as f64;
                let dims: Vec<&Vec<Vec<f64>>> = ta
                    .index
                    .entries()
                    .iter()
                    .zip(tb.index.entries())
                    .map(|(&la, &lb)| &blocks[&(la, lb)])
                    .collect();
                for (i, ti) in local[a].iter().enumerate() {
                    let pi = ta.point_ids[i] as usize;
                    for (j, tj) in local[b].iter().enumerate() {
                        let pj = tb.point_ids[j] as usize;
                        let mut prod = c;
                        for (m, blk) in dims.iter().enumerate() {
                            prod *= blk[ti[m]][tj[m]];
                            if prod == 0.0 {
                                break;
                            }
                        }
                        if a == b {
                            g.add(pi, pj, prod);
                        } else {
                            g.add(pi, pj, prod);
                            g.add(pj, pi, prod);
                        }
                    }
                }
            }
        }
        g
    }

    fn local_tuples(&self, t: &Term) -> Vec<Vec<usize>> {
        t.point_ids
            .iter()
            .map(|&p| {
                self.points[p as usize]
                    .knots()
                    .iter()
                    .zip(t.index.entries())
                    .map(|(k, &l)| k.index_at(l).expect("knot present"))
                    .collect()
            })
            .collect()
    }

    /// `‖L_z‖_{L²_π(Γ)}` for every point, without forming the full Gram matrix.
    pub fn lagrange_norms(&self) -> Vec<f64> {
        #[allow(unused_imports)] // std, when linked, supplies these as inherent methods
        use num_traits::Float;
        let blocks = self.mass_blocks();
        let mut containing: Vec<Vec<(usize, Vec<usize>)>> = vec![Vec::new(); self.points.len()];
        for (a, t) in self.terms.iter().enumerate() {
            for (p, tuple) in t.point_ids.iter().zip(self.local_tuples(t)) {
                containing[*p as usize].push((a, tuple));
            }
        }
        containing
            .iter()
            .map(|list| {
                let mut s = 0.0;
                for (a, ti) in list {
                    for (b, tj) in list {
                        let ta = &self.terms[*a];
                        let tb = &self.terms[*b];
                        let mut prod = (ta.coeff * tb.coeff) as f64;
                        for m in 0..self.dim() {
                            let key = (ta.index.entries()[m], tb.index.entries()[m]);
                            prod *= blocks[&key][ti[m]][tj[m]];
                        }
                        s += prod;
                    }
                }
                s.max(0.0).sqrt()
            })
            .collect()
    }

    pub fn lagrange_norm(&self, z: &CollocationPoint) -> Result<f64> {
        let i = self
            .position(z)
            .ok_or_else(|| Error::contract("point is not in the sparse grid"))?;
        Ok(self.lagrange_norms()[i])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn basis(dim: usize, e: &[&[u32]]) -> SparseGridBasis {
        let set = MultiIndexSet::from_indices(
            dim,
            e.iter().map(|x| MultiIndex::new(x.to_vec()).unwrap()),
        )
        .unwrap();
        SparseGridBasis::new(set).unwrap()
    }

    #[test]
    fn grid_examples() {
        let b = basis(2, &[&[1, 1]]);
        assert_eq!(b.points().len(), 1);
        assert_eq!(b.points()[0].coords(), &[0.0, 0.0]);
        let b = basis(2, &[&[1, 1], &[2, 1]]);
        let c: Vec<_> = b.points().iter().map(|p| p.coords().to_vec()).collect();
        assert_eq!(c, vec![vec![-1.0, 0.0], vec![0.0, 0.0], vec![1.0, 0.0]]);
        assert_eq!(basis(1, &[&[1], &[2], &[3]]).len(), 5);
    }

    #[test]
    fn single_point_grid() {
        let b = basis(3, &[&[1, 1, 1]]);
        let z = b.points()[0].clone();
        assert_eq!(b.evaluate_lagrange(&z, &[0.3, -0.9, 0.1]).unwrap(), 1.0);
        assert_eq!(b.gram().get(0, 0), 1.0);
        assert_eq!(b.lagrange_norm(&z).unwrap(), 1.0);
    }

    #[test]
    fn quadratic_lagrange_and_gram() {
        let b = basis(1, &[&[1], &[2]]);
        let z = CollocationPoint::center(1);
        assert!((b.evaluate_lagrange(&z, &[0.5]).unwrap() - 0.75).abs() < 1e-15);
        let i = b.position(&z).unwrap();
        assert!((b.gram().get(i, i) - 8.0 / 15.0).abs() < 1e-14);
        assert!((b.lagrange_norm(&z).unwrap() - (8.0f64 / 15.0).sqrt()).abs() < 1e-14);
        let vals: Vec<f64> = b.points().iter().map(|p| p.coords()[0].powi(2)).collect();
        assert!((b.interpolate(&vals, &[0.5]).unwrap() - 0.25).abs() < 1e-15);
    }

    #[test]
    fn unknown_point_is_rejected() {
        let b = basis(1, &[&[1]]);
        let z = CollocationPoint::from_knots(vec![Knot::at(2, 0).unwrap()]);
        assert!(matches!(
            b.evaluate_lagrange(&z, &[0.0]),
            Err(Error::Contract(_))
        ));
    }

    #[test]
    fn norms_match_gram_diagonal() {
        let b = basis(2, &[&[1, 1], &[2, 1], &[1, 2], &[3, 1], &[2, 2]]);
        let g = b.gram();
        for (i, n) in b.lagrange_norms().iter().enumerate() {
            assert!((n * n - g.get(i, i)).abs() < 1e-13);
        }
    }
}
