use alloc::vec::Vec;
use core::cmp::Ordering;
use core::f64::consts::PI;
#[allow(unused_imports)] // std, when linked, supplies these as inherent methods
use num_traits::Float;

use crate::{Error, Result};

/// Largest supported 1D level (`2^23 + 1` nodes).
pub const MAX_LEVEL: u32 = 24;

/// Number of nodes at `level`: `mf(1) = 1`, `mf(ν) = 2^(ν-1) + 1`.
pub fn level_size(level: u32) -> Result<usize> {
    match level {
        0 => Err(Error::InvalidLevel(0)),
        1 => Ok(1),
        l if l <= MAX_LEVEL => Ok((1usize << (l - 1)) + 1),
        l => Err(Error::InvalidLevel(l)),
    }
}

/// Clenshaw–Curtis abscissae at `level`, ascending.
pub fn cc_points(level: u32) -> Result<Vec<f64>> {
    Ok(Knot::all_at(level)?.iter().map(Knot::coordinate).collect())
}

/// Exact identity of a nested Clenshaw–Curtis node.
///
/// The node is `-cos(π t)` with the dyadic angle `t = num / 2^exp ∈ [0, 1]`
/// stored in lowest terms, so a node keeps the same key at every level it
/// appears on. Ordering matches the ordering of the coordinates.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Knot {
    num: u32,
    exp: u32,
}

impl Knot {
    fn reduced(mut num: u32, mut exp: u32) -> Knot {
        if num == 0 {
            return Knot { num: 0, exp: 0 };
        }
        while exp > 0 && num % 2 == 0 {
            num /= 2;
            exp -= 1;
        }
        Knot { num, exp }
    }

    /// Node `index` (0-based, ascending) at `level`.
    pub fn at(level: u32, index: usize) -> Result<Knot> {
        let n = level_size(level)?;
        if index >= n {
            return Err(Error::contract("knot index out of range for level"));
        }
        if level == 1 {
            return Ok(Knot { num: 1, exp: 1 });
        }
        Ok(Knot::reduced(index as u32, level - 1))
    }

    pub fn all_at(level: u32) -> Result<Vec<Knot>> {
        let n = level_size(level)?;
        (0..n).map(|i| Knot::at(level, i)).collect()
    }

    /// The level on which this node first appears.
    pub fn first_level(&self) -> u32 {
        match (self.num, self.exp) {
            (1, 1) => 1,
            (_, 0) => 2,
            (_, e) => e + 1,
        }
    }

    /// Position of the node among the nodes of `level`, if present there.
    pub fn index_at(&self, level: u32) -> Option<usize> {
        if level == 0 || self.first_level() > level {
            return None;
        }
        if level == 1 {
            return Some(0);
        }
        Some((self.num as usize) << (level - 1 - self.exp))
    }

    pub fn coordinate(&self) -> f64 {
        // -cos(π t) written as sin(π (t - 1/2)) so that the midpoint is
        // exactly 0 and the rule is exactly symmetric.
        let shift = 1u64 << self.exp;
        let numer = 2 * self.num as i64 - shift as i64;
        let denom = (2 * shift) as f64;
        (PI * numer as f64 / denom).sin()
    }
}

impl Ord for Knot {
    fn cmp(&self, other: &Self) -> Ordering {
        let lhs = (self.num as u64) << other.exp;
        let rhs = (other.num as u64) << self.exp;
        lhs.cmp(&rhs)
    }
}

impl PartialOrd for Knot {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Barycentric weights of the Clenshaw–Curtis nodes at one level.
pub(crate) fn barycentric_weights(n: usize) -> Vec<f64> {
    if n == 1 {
        return alloc::vec![1.0];
    }
    (0..n)
        .map(|k| {
            let s = if k % 2 == 0 { 1.0 } else { -1.0 };
            if k == 0 || k == n - 1 {
                0.5 * s
            } else {
                s
            }
        })
        .collect()
}

/// Values of all 1D Lagrange polynomials on `nodes` at `y`, written to `out`.
pub(crate) fn lagrange_1d(nodes: &[f64], weights: &[f64], y: f64, out: &mut [f64]) {
    if nodes.len() == 1 {
        out[0] = 1.0;
        return;
    }
    if let Some(hit) = nodes.iter().position(|&x| x == y) {
        out.iter_mut().for_each(|v| *v = 0.0);
        out[hit] = 1.0;
        return;
    }
    let mut sum = 0.0;
    for ((o, &x), &w) in out.iter_mut().zip(nodes).zip(weights) {
        *o = w / (y - x);
        sum += *o;
    }
    out.iter_mut().for_each(|v| *v /= sum);
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn point_examples() {
        assert_eq!(cc_points(1).unwrap(), vec![0.0]);
        assert_eq!(cc_points(2).unwrap(), vec![-1.0, 0.0, 1.0]);
        let p3 = cc_points(3).unwrap();
        let h = core::f64::consts::FRAC_1_SQRT_2;
        for (a, b) in p3.iter().zip([-1.0, -h, 0.0, h, 1.0]) {
            assert!((a - b).abs() < 1e-15);
        }
        assert_eq!(p3[1], -p3[3]);
    }

    #[test]
    fn level_zero_is_invalid() {
        assert_eq!(cc_points(0), Err(Error::InvalidLevel(0)));
        assert!(level_size(MAX_LEVEL + 1).is_err());
    }

    #[test]
    fn nested_keys_and_coordinates() {
        for level in 1..8 {
            let coarse = Knot::all_at(level).unwrap();
            let fine = Knot::all_at(level + 1).unwrap();
            for k in &coarse {
                let j = k.index_at(level + 1).unwrap();
                assert_eq!(fine[j], *k);
                assert_eq!(fine[j].coordinate().to_bits(), k.coordinate().to_bits());
            }
            assert!(fine.windows(2).all(|w| w[0] < w[1]));
            assert!(fine
                .windows(2)
                .all(|w| w[0].coordinate() < w[1].coordinate()));
        }
    }

    #[test]
    fn first_levels() {
        assert_eq!(Knot::at(1, 0).unwrap().first_level(), 1);
        assert_eq!(Knot::at(2, 1).unwrap().first_level(), 1);
        assert_eq!(Knot::at(2, 0).unwrap().first_level(), 2);
        assert_eq!(Knot::at(3, 1).unwrap().first_level(), 3);
        assert_eq!(Knot::at(4, 4).unwrap().first_level(), 1);
    }

    #[test]
    fn lagrange_quadratic() {
        let nodes = cc_points(2).unwrap();
        let w = barycentric_weights(3);
        let mut out = [0.0; 3];
        lagrange_1d(&nodes, &w, 0.5, &mut out);
        assert!((out[1] - 0.75).abs() < 1e-15);
        assert!((out.iter().sum::<f64>() - 1.0).abs() < 1e-15);
    }
}
