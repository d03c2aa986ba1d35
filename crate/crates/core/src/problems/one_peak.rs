#[allow(unused_imports)] // std, when linked, supplies these as inherent methods
use num_traits::Float;

use super::{ParametricProblem, ProblemKind};
use crate::mesh::Domain;

/// `(1/9)(√10 − 1)π/50`, the exact mean of `∫ u²` for the unscaled problem.
pub fn one_peak_reference_qoi() -> f64 {
    (10.0f64.sqrt() - 1.0) * core::f64::consts::PI / 450.0
}

/// Poisson problem on `(−4, 4)²` whose pathwise solution is the anisotropic
/// Gaussian `u = exp(−β(α(y₁)(x₁−y₁)² + (x₂−y₂)²))`, `β = 50/16`,
/// `α(y₁) = (9y₁ + 11)/2`, with `u = 0` imposed on the boundary.
#[derive(Clone, Debug, PartialEq)]
pub struct OnePeakProblem {
    resolution: usize,
}

impl OnePeakProblem {
    pub const BETA: f64 = 50.0 / 16.0;

    pub fn new(resolution: usize) -> Self {
        OnePeakProblem { resolution }
    }

    pub fn standard() -> Self {
        Self::new(8)
    }

    pub fn alpha(y1: f64) -> f64 {
        (9.0 * y1 + 11.0) / 2.0
    }

    pub fn exact(x: [f64; 2], y: &[f64]) -> f64 {
        let (dx, dy) = (x[0] - y[0], x[1] - y[1]);
        (-Self::BETA * (Self::alpha(y[0]) * dx * dx + dy * dy)).exp()
    }

    /// Exact `∇u`.
    pub fn exact_gradient(x: [f64; 2], y: &[f64]) -> [f64; 2] {
        let (dx, dy) = (x[0] - y[0], x[1] - y[1]);
        let a = Self::alpha(y[0]);
        let u = Self::exact(x, y);
        [-2.0 * Self::BETA * a * dx * u, -2.0 * Self::BETA * dy * u]
    }
}

impl ParametricProblem for OnePeakProblem {
    fn name(&self) -> &str {
        "testIII"
    }

    fn kind(&self) -> ProblemKind {
        ProblemKind::ParametricRhs
    }

    fn parameter_dim(&self) -> usize {
        2
    }

    fn domain(&self) -> Domain {
        Domain::ScaledSquare
    }

    fn default_resolution(&self) -> usize {
        self.resolution
    }

    fn coefficient(&self, _x: [f64; 2], _y: &[f64]) -> f64 {
        1.0
    }

    fn rhs(&self, x: [f64; 2], y: &[f64]) -> f64 {
        let b = Self::BETA;
        let a = Self::alpha(y[0]);
        let (dx, dy) = (x[0] - y[0], x[1] - y[1]);
        let d = -4.0 * b * b * (a * a * dx * dx + dy * dy) + 2.0 * b * (a + 1.0);
        d * Self::exact(x, y)
    }

    fn exact_solution(&self, x: [f64; 2], y: &[f64]) -> Option<f64> {
        Some(Self::exact(x, y))
    }

    fn coefficient_bounds(&self) -> Option<(f64, f64)> {
        Some((1.0, 1.0))
    }

    fn qoi_scale(&self) -> Option<f64> {
        Some(1.0 / 16.0)
    }

    fn reference_qoi(&self) -> Option<f64> {
        Some(one_peak_reference_qoi())
    }
}
