#[allow(unused_imports)] // std, when linked, supplies these as inherent methods
use num_traits::Float;

use super::{kl_eigenpairs_2d, KlExpansion, ParametricProblem, ProblemKind};
use crate::mesh::Domain;
use crate::Result;

/// `a = exp(1 + Σ √λ_m φ_m(x) y_m)` with separable exponential covariance
/// modes, `f = 1`, on the L-shaped domain.
#[derive(Clone, Debug, PartialEq)]
pub struct ExpKlProblem {
    kl: KlExpansion,
    resolution: usize,
}

impl ExpKlProblem {
    pub const DEFAULT_SIGMA: f64 = 1.5;

    pub fn new(dim: usize, sigma: f64, resolution: usize) -> Result<Self> {
        Ok(ExpKlProblem {
            kl: kl_eigenpairs_2d(dim, sigma)?,
            resolution,
        })
    }

    /// Four modes, `σ = 1.5`, resolution 4 (65 vertices).
    pub fn standard() -> Self {
        Self::new(4, Self::DEFAULT_SIGMA, 4).expect("standard KL roots bracket")
    }

    pub fn expansion(&self) -> &KlExpansion {
        &self.kl
    }
}

impl ParametricProblem for ExpKlProblem {
    fn name(&self) -> &str {
        "testII"
    }

    fn kind(&self) -> ProblemKind {
        ProblemKind::ParametricCoefficient
    }

    fn parameter_dim(&self) -> usize {
        self.kl.modes.len()
    }

    fn domain(&self) -> Domain {
        Domain::LShape
    }

    fn default_resolution(&self) -> usize {
        self.resolution
    }

    fn coefficient(&self, x: [f64; 2], y: &[f64]) -> f64 {
        (1.0 + self.kl.field(x, y)).exp()
    }

    fn rhs(&self, _x: [f64; 2], _y: &[f64]) -> f64 {
        1.0
    }

    fn coefficient_bounds(&self) -> Option<(f64, f64)> {
        let b = self.kl.field_bound();
        Some(((1.0 - b).exp(), (1.0 + b).exp()))
    }
}
