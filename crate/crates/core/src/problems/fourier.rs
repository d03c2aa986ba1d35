use alloc::vec::Vec;
#[allow(unused_imports)] // std, when linked, supplies these as inherent methods
use num_traits::Float;

use super::{ParametricProblem, ProblemKind};
use crate::mesh::Domain;

/// `(k(m), β₁(m), β₂(m))`: mode `m ≥ 1` has total order `k` and splits it
/// as `β₁ + β₂ = k`, enumerating planar modes by increasing total order.
pub fn fourier_order(m: usize) -> (usize, usize, usize) {
    assert!(m >= 1, "modes are numbered from 1");
    let mut k = 0;
    while (k + 1) * (k + 2) / 2 <= m {
        k += 1;
    }
    let b1 = m - k * (k + 1) / 2;
    (k, b1, k - b1)
}

/// Affine coefficient with planar Fourier modes on the unit square,
/// `a = 1 + Σ α_m cos(2πβ₁x₁)cos(2πβ₂x₂) y_m`, `α_m = ᾱ m⁻²`, `f = 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct FourierProblem {
    alphas: Vec<f64>,
    betas: Vec<(f64, f64)>,
    resolution: usize,
}

impl FourierProblem {
    pub const DEFAULT_AMPLITUDE: f64 = 0.547;

    pub fn new(dim: usize, amplitude: f64, resolution: usize) -> Self {
        let alphas = (1..=dim).map(|m| amplitude / (m * m) as f64).collect();
        let betas = (1..=dim)
            .map(|m| {
                let (_, b1, b2) = fourier_order(m);
                (b1 as f64, b2 as f64)
            })
            .collect();
        FourierProblem {
            alphas,
            betas,
            resolution,
        }
    }

    /// Four parameters, slow decay, 8 × 8 initial mesh.
    pub fn standard() -> Self {
        Self::new(4, Self::DEFAULT_AMPLITUDE, 8)
    }

    pub fn alphas(&self) -> &[f64] {
        &self.alphas
    }
}

impl ParametricProblem for FourierProblem {
    fn name(&self) -> &str {
        "testI"
    }

    fn kind(&self) -> ProblemKind {
        ProblemKind::ParametricCoefficient
    }

    fn parameter_dim(&self) -> usize {
        self.alphas.len()
    }

    fn domain(&self) -> Domain {
        Domain::UnitSquare
    }

    fn default_resolution(&self) -> usize {
        self.resolution
    }

    fn coefficient(&self, x: [f64; 2], y: &[f64]) -> f64 {
        let tau = 2.0 * core::f64::consts::PI;
        let mut a = 1.0;
        for ((alpha, (b1, b2)), ym) in self.alphas.iter().zip(&self.betas).zip(y) {
            a += alpha * (tau * b1 * x[0]).cos() * (tau * b2 * x[1]).cos() * ym;
        }
        a
    }

    fn rhs(&self, _x: [f64; 2], _y: &[f64]) -> f64 {
        1.0
    }

    fn coefficient_bounds(&self) -> Option<(f64, f64)> {
        let s: f64 = self.alphas.iter().sum();
        Some((1.0 - s, 1.0 + s))
    }
}
