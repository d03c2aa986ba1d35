//! Independent oracles shared by the integration tests and the acceptance
//! suite. Nothing here calls into the code paths being checked.
#![allow(dead_code)]

pub mod props;

use std::collections::BTreeSet;

use nalgebra::{DMatrix, SymmetricEigen};
use scfem_core::fem::quadrature::{map_point, triangle_rule};
use scfem_core::fem::{p1_gradients, FemFunction};

/// All nonempty downward-closed subsets of `{1..=max_level}^dim`.
pub fn monotone_sets(dim: usize, max_level: u32) -> Vec<BTreeSet<Vec<u32>>> {
    // A downset is the region under an antitone height function on the
    // first `dim - 1` coordinates.
    let base: Vec<Vec<u32>> = if dim == 1 {
        vec![vec![]]
    } else {
        let mut pts = vec![vec![]];
        for _ in 0..dim - 1 {
            pts = pts
                .into_iter()
                .flat_map(|p: Vec<u32>| {
                    (1..=max_level).map(move |l| {
                        let mut q = p.clone();
                        q.push(l);
                        q
                    })
                })
                .collect();
        }
        pts
    };
    let mut out = Vec::new();
    let mut heights = vec![0u32; base.len()];
    fn rec(
        k: usize,
        base: &[Vec<u32>],
        heights: &mut Vec<u32>,
        max_level: u32,
        out: &mut Vec<BTreeSet<Vec<u32>>>,
    ) {
        if k == base.len() {
            if heights[0] == 0 {
                return;
            }
            let mut set = BTreeSet::new();
            for (p, &h) in base.iter().zip(heights.iter()) {
                for l in 1..=h {
                    let mut q = p.clone();
                    q.push(l);
                    set.insert(q);
                }
            }
            out.push(set);
            return;
        }
        // lexicographic order puts every backward neighbour before `k`
        let mut cap = max_level;
        for m in 0..base[k].len() {
            if base[k][m] > 1 {
                let mut b = base[k].clone();
                b[m] -= 1;
                let j = base.iter().position(|q| *q == b).unwrap();
                cap = cap.min(heights[j]);
            }
        }
        for h in 0..=cap {
            heights[k] = h;
            rec(k + 1, base, heights, max_level, out);
        }
    }
    rec(0, &base, &mut heights, max_level, &mut out);
    out
}

/// Reduced margin by exhaustive search over `{1..=bound}^dim`.
pub fn brute_force_margin(set: &BTreeSet<Vec<u32>>, dim: usize, bound: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut nu = vec![1u32; dim];
    loop {
        if !set.contains(&nu) {
            let ok = (0..dim).all(|m| {
                if nu[m] == 1 {
                    return true;
                }
                let mut b = nu.clone();
                b[m] -= 1;
                set.contains(&b)
            });
            if ok {
                out.push(nu.clone());
            }
        }
        let mut m = dim;
        loop {
            if m == 0 {
                out.sort();
                return out;
            }
            m -= 1;
            if nu[m] < bound {
                nu[m] += 1;
                break;
            }
            nu[m] = 1;
        }
    }
}

/// Midpoint-rule Nyström matrix of `exp(-|x - x'|)` on `[-1, 1]`.
pub fn nystrom_matrix_1d(n: usize) -> DMatrix<f64> {
    let h = 2.0 / n as f64;
    let x: Vec<f64> = (0..n).map(|i| -1.0 + (i as f64 + 0.5) * h).collect();
    DMatrix::from_fn(n, n, |i, j| h * (-(x[i] - x[j]).abs()).exp())
}

fn sorted_desc(mut v: Vec<f64>) -> Vec<f64> {
    v.sort_by(|a, b| b.partial_cmp(a).unwrap());
    v
}

/// Leading eigenvalues of the 1D exponential-kernel operator from Nyström
/// matrices with `n` and `2n` nodes and one Richardson step (error `O(h²)`).
pub fn nystrom_eigenvalues_1d(n: usize, count: usize) -> Vec<f64> {
    let coarse = sorted_desc(
        SymmetricEigen::new(nystrom_matrix_1d(n))
            .eigenvalues
            .as_slice()
            .to_vec(),
    );
    let fine = sorted_desc(
        SymmetricEigen::new(nystrom_matrix_1d(2 * n))
            .eigenvalues
            .as_slice()
            .to_vec(),
    );
    (0..count)
        .map(|k| (4.0 * fine[k] - coarse[k]) / 3.0)
        .collect()
}

/// Leading eigenvalues of the 2D Nyström discretisation of
/// `σ² exp(-|x₁-x₁'| - |x₂-x₂'|)` on `[-1, 1]²` with an `n × n` midpoint
/// grid, by block subspace iteration with Rayleigh–Ritz. The operator is
/// applied matrix-free as `V ↦ σ² A V Aᵀ`; no eigenvalue structure is
/// assumed.
pub fn nystrom_eigenvalues_2d_grid(n: usize, sigma: f64, count: usize) -> Vec<f64> {
    let a = nystrom_matrix_1d(n);
    let block = count + 6;
    let apply = |v: &DMatrix<f64>| -> DMatrix<f64> {
        let mut out = DMatrix::zeros(n * n, v.ncols());
        for c in 0..v.ncols() {
            let grid = DMatrix::from_column_slice(n, n, v.column(c).as_slice());
            let w = &a * grid * a.transpose() * (sigma * sigma);
            out.column_mut(c).copy_from_slice(w.as_slice());
        }
        out
    };
    // deterministic, generic start
    let mut x = DMatrix::from_fn(n * n, block, |i, j| {
        ((i * 7919 + j * 104729) % 1009) as f64 / 1009.0 - 0.5
    });
    let mut prev = vec![0.0; count];
    for _ in 0..500 {
        let q = x.clone().qr().q();
        let aq = apply(&q);
        let h = q.transpose() * &aq;
        let h = (&h + h.transpose()) * 0.5;
        let eig = SymmetricEigen::new(h);
        let mut order: Vec<usize> = (0..block).collect();
        order.sort_by(|&i, &j| eig.eigenvalues[j].partial_cmp(&eig.eigenvalues[i]).unwrap());
        let vals: Vec<f64> = order[..count].iter().map(|&i| eig.eigenvalues[i]).collect();
        let done = vals
            .iter()
            .zip(&prev)
            .all(|(a, b)| (a - b).abs() < 1e-13 * a.abs());
        prev = vals;
        if done {
            break;
        }
        x = aq;
    }
    prev
}

/// [`nystrom_eigenvalues_2d_grid`] on `n` and `2n` grids with Richardson.
pub fn nystrom_eigenvalues_2d(n: usize, sigma: f64, count: usize) -> Vec<f64> {
    let c = nystrom_eigenvalues_2d_grid(n, sigma, count);
    let f = nystrom_eigenvalues_2d_grid(2 * n, sigma, count);
    c.iter().zip(&f).map(|(c, f)| (4.0 * f - c) / 3.0).collect()
}

/// `‖∇(u − u_h)‖` from a gradient oracle, by the degree-5 rule on each
/// element split into four.
pub fn energy_error(u: &FemFunction, grad: impl Fn([f64; 2]) -> [f64; 2]) -> f64 {
    let mesh = u.mesh();
    let rule = triangle_rule();
    let mut s = 0.0;
    for (e, t) in mesh.elements().iter().enumerate() {
        let p = mesh.element_coords(e);
        let (g, area) = p1_gradients(&p);
        let mut gu = [0.0; 2];
        for i in 0..3 {
            let v = u.coeffs()[t[i] as usize];
            gu[0] += v * g[i][0];
            gu[1] += v * g[i][1];
        }
        let mid = |a: [f64; 2], b: [f64; 2]| [(a[0] + b[0]) / 2.0, (a[1] + b[1]) / 2.0];
        let (m0, m1, m2) = (mid(p[1], p[2]), mid(p[2], p[0]), mid(p[0], p[1]));
        for sub in [[p[0], m2, m1], [m2, p[1], m0], [m1, m0, p[2]], [m0, m1, m2]] {
            for (l, w) in &rule {
                let x = map_point(&sub, l);
                let ge = grad(x);
                s += w * area / 4.0 * ((ge[0] - gu[0]).powi(2) + (ge[1] - gu[1]).powi(2));
            }
        }
    }
    s.sqrt()
}

/// Least-squares slope of `log y` against `log x`.
pub fn loglog_slope(x: &[f64], y: &[f64]) -> f64 {
    let lx: Vec<f64> = x.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = y.iter().map(|v| v.ln()).collect();
    let n = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxy: f64 = lx.iter().zip(&ly).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = lx.iter().map(|a| (a - mx).powi(2)).sum();
    sxy / sxx
}
