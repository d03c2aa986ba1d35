use alloc::vec;
use alloc::vec::Vec;
#[allow(unused_imports)] // std, when linked, supplies these as inherent methods
use num_traits::Float;

use super::{CsrMatrix, FemFunction, SparseSystem};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SolverOptions {
    /// Stop once `‖b − Ax‖ ≤ rel_tol·‖b‖` on the free dofs.
    pub rel_tol: f64,
    /// Iteration cap; `None` means `max(⌈20√n⌉, 100)` for `n` free dofs.
    pub max_iterations: Option<usize>,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            rel_tol: 1e-10,
            max_iterations: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SolveStats {
    pub iterations: usize,
    pub relative_residual: f64,
}

/// Solves with default options and a zero initial guess.
pub fn solve(system: &SparseSystem, rel_tol: f64) -> Result<FemFunction> {
    let opts = SolverOptions {
        rel_tol,
        ..SolverOptions::default()
    };
    solve_with(system, &opts, None).map(|(u, _)| u)
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Jacobi-preconditioned conjugate gradients on the free dofs, optionally
/// warm-started from nodal values `guess` (boundary entries ignored).
pub fn solve_with(
    system: &SparseSystem,
    opts: &SolverOptions,
    guess: Option<&[f64]>,
) -> Result<(FemFunction, SolveStats)> {
    let n = system.matrix().size();
    let mut mask = vec![false; n];
    for &i in system.free_dofs() {
        mask[i] = true;
    }
    let mut x = vec![0.0; n];
    if let Some(g) = guess {
        if g.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: g.len(),
            });
        }
        for &i in system.free_dofs() {
            x[i] = g[i];
        }
    }
    let (x, stats) = pcg(system.matrix(), system.rhs(), &mask, x, opts)?;
    Ok((FemFunction::new(system.mesh().clone(), x)?, stats))
}

/// PCG for `A x = b` restricted to the rows with `mask[i]`; other entries of
/// `x` stay at zero.
pub(crate) fn pcg(
    a: &CsrMatrix,
    b: &[f64],
    mask: &[bool],
    mut x: Vec<f64>,
    opts: &SolverOptions,
) -> Result<(Vec<f64>, SolveStats)> {
    let n = a.size();
    let free = mask.iter().filter(|&&m| m).count();
    let cap = opts
        .max_iterations
        .unwrap_or_else(|| ((20.0 * (free as f64).sqrt()).ceil() as usize).max(100));
    for (xi, &m) in x.iter_mut().zip(mask) {
        if !m {
            *xi = 0.0;
        }
    }
    let bnorm = (0..n)
        .filter(|&i| mask[i])
        .map(|i| b[i] * b[i])
        .sum::<f64>()
        .sqrt();
    if bnorm == 0.0 {
        return Ok((
            vec![0.0; n],
            SolveStats {
                iterations: 0,
                relative_residual: 0.0,
            },
        ));
    }

    let inv_diag: Vec<f64> = a
        .diagonal()
        .iter()
        .zip(mask)
        .map(|(&d, &m)| if m && d > 0.0 { 1.0 / d } else { 0.0 })
        .collect();
    let mut ap = vec![0.0; n];
    a.mul_vec_into(&x, &mut ap);
    let mut r: Vec<f64> = (0..n)
        .map(|i| if mask[i] { b[i] - ap[i] } else { 0.0 })
        .collect();
    let mut z: Vec<f64> = r.iter().zip(&inv_diag).map(|(r, d)| r * d).collect();
    let mut p = z.clone();
    let mut rz = dot(&r, &z);
    let mut history = Vec::new();
    let mut res = dot(&r, &r).sqrt() / bnorm;
    history.push(res);
    let mut it = 0;
    while res > opts.rel_tol {
        if it == cap {
            return Err(Error::SolverFailure {
                iterations: it,
                residual: res,
                history,
            });
        }
        a.mul_vec_into(&p, &mut ap);
        for (v, &m) in ap.iter_mut().zip(mask) {
            if !m {
                *v = 0.0;
            }
        }
        let pap = dot(&p, &ap);
        if !(pap > 0.0) {
            return Err(Error::SolverFailure {
                iterations: it,
                residual: res,
                history,
            });
        }
        let alpha = rz / pap;
        for i in 0..n {
            x[i] += alpha * p[i];
            r[i] -= alpha * ap[i];
        }
        for i in 0..n {
            z[i] = r[i] * inv_diag[i];
        }
        let rz_new = dot(&r, &z);
        let beta = rz_new / rz;
        rz = rz_new;
        for i in 0..n {
            p[i] = z[i] + beta * p[i];
        }
        it += 1;
        res = dot(&r, &r).sqrt() / bnorm;
        history.push(res);
    }
    Ok((
        x,
        SolveStats {
            iterations: it,
            relative_residual: res,
        },
    ))
}
