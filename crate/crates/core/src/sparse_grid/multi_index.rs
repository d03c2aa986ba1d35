use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::{Error, Result};

/// A multi-index `ν ∈ ℕ^M` with 1-based levels.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(entries: Vec<u32>) -> Result<Self> {
        if let Some(&bad) = entries.iter().find(|&&e| e == 0) {
            return Err(Error::InvalidLevel(bad));
        }
        Ok(MultiIndex(entries))
    }

    /// The root index `(1, …, 1)`.
    pub fn ones(dim: usize) -> Self {
        MultiIndex(vec![1; dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    /// `ν - e_m`, or `None` when `ν_m = 1`.
    pub fn backward(&self, m: usize) -> Option<MultiIndex> {
        (self.0[m] > 1).then(|| {
            let mut e = self.0.clone();
            e[m] -= 1;
            MultiIndex(e)
        })
    }

    /// `ν + e_m`.
    pub fn forward(&self, m: usize) -> MultiIndex {
        let mut e = self.0.clone();
        e[m] += 1;
        MultiIndex(e)
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Finite set of multi-indices of a fixed dimension, iterated in
/// lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiIndexSet {
    dim: usize,
    indices: BTreeSet<MultiIndex>,
}

impl MultiIndexSet {
    pub fn empty(dim: usize) -> Self {
        MultiIndexSet {
            dim,
            indices: BTreeSet::new(),
        }
    }

    /// `{𝟙}`, the starting set of the adaptive loop.
    pub fn initial(dim: usize) -> Self {
        let mut s = Self::empty(dim);
        s.indices.insert(MultiIndex::ones(dim));
        s
    }

    pub fn from_indices<I: IntoIterator<Item = MultiIndex>>(
        dim: usize,
        indices: I,
    ) -> Result<Self> {
        let mut s = Self::empty(dim);
        for nu in indices {
            s.insert(nu)?;
        }
        Ok(s)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn contains(&self, nu: &MultiIndex) -> bool {
        self.indices.contains(nu)
    }

    pub fn iter(&self) -> impl Iterator<Item = &MultiIndex> + '_ {
        self.indices.iter()
    }

    pub fn insert(&mut self, nu: MultiIndex) -> Result<bool> {
        if nu.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: nu.dim(),
            });
        }
        Ok(self.indices.insert(nu))
    }

    /// Every backward neighbour of `nu` is in the set.
    pub fn is_admissible(&self, nu: &MultiIndex) -> bool {
        (0..self.dim).all(|m| nu.backward(m).map_or(true, |b| self.indices.contains(&b)))
    }

    /// Downward closedness: `ν ∈ S, ν_m > 1 ⇒ ν - e_m ∈ S`.
    pub fn is_monotone(&self) -> bool {
        self.indices.iter().all(|nu| self.is_admissible(nu))
    }

    /// Indices outside the set whose backward neighbours all lie inside,
    /// in lexicographic order.
    pub fn reduced_margin(&self) -> Result<Vec<MultiIndex>> {
        if self.is_empty() {
            return Err(Error::contract("reduced margin of an empty index set"));
        }
        if !self.is_monotone() {
            return Err(Error::contract(
                "reduced margin of a non-monotone index set",
            ));
        }
        let mut out = BTreeSet::new();
        for nu in &self.indices {
            for m in 0..self.dim {
                let cand = nu.forward(m);
                if !self.indices.contains(&cand) && self.is_admissible(&cand) {
                    out.insert(cand);
                }
            }
        }
        Ok(out.into_iter().collect())
    }

    /// Largest level used in each direction (1 for an empty set).
    pub fn max_levels(&self) -> Vec<u32> {
        let mut out = vec![1; self.dim];
        for nu in &self.indices {
            for (o, &e) in out.iter_mut().zip(nu.entries()) {
                *o = (*o).max(e);
            }
        }
        out
    }

    pub fn union(&self, other: &MultiIndexSet) -> Result<MultiIndexSet> {
        let mut s = self.clone();
        for nu in other.iter() {
            s.insert(nu.clone())?;
        }
        Ok(s)
    }
}

/// Combination-technique coefficients
/// `c_ν = Σ_{e ∈ {0,1}^M, ν+e ∈ S} (-1)^{|e|}`; zero coefficients are dropped.
pub fn combination_coeffs(set: &MultiIndexSet) -> BTreeMap<MultiIndex, i64> {
    let dim = set.dim();
    let mut out = BTreeMap::new();
    for nu in set.iter() {
        let mut c = 0i64;
        for mask in 0u64..(1u64 << dim) {
            let mut e = nu.entries().to_vec();
            for (m, v) in e.iter_mut().enumerate() {
                *v += ((mask >> m) & 1) as u32;
            }
            if set.contains(&MultiIndex(e)) {
                c += if mask.count_ones() % 2 == 0 { 1 } else { -1 };
            }
        }
        if c != 0 {
            out.insert(nu.clone(), c);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mi(e: &[u32]) -> MultiIndex {
        MultiIndex::new(e.to_vec()).unwrap()
    }

    fn set(dim: usize, e: &[&[u32]]) -> MultiIndexSet {
        MultiIndexSet::from_indices(dim, e.iter().map(|x| mi(x))).unwrap()
    }

    #[test]
    fn monotonicity_examples() {
        assert!(MultiIndexSet::empty(2).is_monotone());
        assert!(set(2, &[&[1, 1], &[2, 1]]).is_monotone());
        assert!(!set(2, &[&[1, 1], &[2, 2]]).is_monotone());
    }

    #[test]
    fn zero_level_rejected() {
        assert_eq!(MultiIndex::new(vec![1, 0]), Err(Error::InvalidLevel(0)));
    }

    #[test]
    fn reduced_margin_examples() {
        assert_eq!(
            set(2, &[&[1, 1]]).reduced_margin().unwrap(),
            vec![mi(&[1, 2]), mi(&[2, 1])]
        );
        assert_eq!(
            set(2, &[&[1, 1], &[2, 1]]).reduced_margin().unwrap(),
            vec![mi(&[1, 2]), mi(&[3, 1])]
        );
        assert_eq!(
            set(1, &[&[1], &[2], &[3]]).reduced_margin().unwrap(),
            vec![mi(&[4])]
        );
    }

    #[test]
    fn reduced_margin_rejects_non_monotone() {
        assert!(matches!(
            set(2, &[&[1, 1], &[2, 2]]).reduced_margin(),
            Err(Error::Contract(_))
        ));
    }

    #[test]
    fn combination_examples() {
        let c = combination_coeffs(&set(2, &[&[1, 1]]));
        assert_eq!(c.into_iter().collect::<Vec<_>>(), vec![(mi(&[1, 1]), 1)]);
        let c = combination_coeffs(&set(2, &[&[1, 1], &[2, 1], &[1, 2]]));
        assert_eq!(c[&mi(&[1, 1])], -1);
        assert_eq!(c[&mi(&[2, 1])], 1);
        assert_eq!(c[&mi(&[1, 2])], 1);
        let c = combination_coeffs(&set(1, &[&[1], &[2]]));
        assert_eq!(c.into_iter().collect::<Vec<_>>(), vec![(mi(&[2]), 1)]);
    }

    #[test]
    fn dimension_checked_on_insert() {
        let mut s = MultiIndexSet::empty(2);
        assert!(matches!(
            s.insert(mi(&[1])),
            Err(Error::DimensionMismatch { .. })
        ));
    }
}
