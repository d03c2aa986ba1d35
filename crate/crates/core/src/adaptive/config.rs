use alloc::format;

use crate::estimators::LocalScaling;
use crate::fem::SolverOptions;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Multilevel,
    SingleLevel,
}

impl Mode {
    pub fn name(&self) -> &'static str {
        match self {
            Mode::Multilevel => "multilevel",
            Mode::SingleLevel => "single-level",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct AdaptiveConfig {
    /// Spatial Dörfler parameter `θ_X ∈ (0, 1]`.
    pub theta_x: f64,
    /// Parametric Dörfler parameter `θ_C ∈ (0, 1]`.
    pub theta_c: f64,
    /// Spatial/parametric switch `ϑ > 0`.
    pub vartheta: f64,
    /// Dörfler parameter of the per-point mesh initialisation.
    pub theta_init: f64,
    /// Stop once `μ_ℓ + τ_ℓ` falls below this value.
    pub tolerance: f64,
    /// Global estimates are computed when `ℓ` is a multiple of this period.
    pub estimate_period: usize,
    pub mode: Mode,
    pub max_iterations: usize,
    /// Stop (unconverged) once the total vertex count reaches this value.
    pub max_dofs: Option<usize>,
    /// Cap on the inner loop of the mesh initialisation.
    pub init_max_iterations: usize,
    pub local_scaling: LocalScaling,
    pub solver: SolverOptions,
    /// Overrides the problem's initial mesh resolution.
    pub resolution: Option<usize>,
}

impl AdaptiveConfig {
    /// `ϑ = 1`, `θ_X = θ_C = θ = 0.3`, estimates every iteration.
    pub fn with_tolerance(tolerance: f64) -> Self {
        AdaptiveConfig {
            theta_x: 0.3,
            theta_c: 0.3,
            vartheta: 1.0,
            theta_init: 0.3,
            tolerance,
            estimate_period: 1,
            mode: Mode::Multilevel,
            max_iterations: 200,
            max_dofs: None,
            init_max_iterations: 40,
            local_scaling: LocalScaling::Energy,
            solver: SolverOptions::default(),
            resolution: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let unit = |name: &str, v: f64| {
            if v > 0.0 && v <= 1.0 {
                Ok(())
            } else {
                Err(Error::InvalidConfig(format!(
                    "{name} must lie in (0, 1], got {v}"
                )))
            }
        };
        unit("theta_x", self.theta_x)?;
        unit("theta_c", self.theta_c)?;
        unit("theta_init", self.theta_init)?;
        if !(self.vartheta > 0.0 && self.vartheta.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "vartheta must be positive, got {}",
                self.vartheta
            )));
        }
        if !(self.tolerance >= 0.0 && self.tolerance.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "tolerance must be nonnegative, got {}",
                self.tolerance
            )));
        }
        if self.estimate_period == 0 {
            return Err(Error::InvalidConfig(
                "estimate_period must be at least 1".into(),
            ));
        }
        if self.max_iterations == 0 || self.init_max_iterations == 0 {
            return Err(Error::InvalidConfig(
                "iteration caps must be at least 1".into(),
            ));
        }
        if !(self.solver.rel_tol > 0.0 && self.solver.rel_tol < 1.0) {
            return Err(Error::InvalidConfig(format!(
                "solver tolerance must lie in (0, 1), got {}",
                self.solver.rel_tol
            )));
        }
        if self.resolution == Some(0) {
            return Err(Error::InvalidConfig("resolution must be at least 1".into()));
        }
        Ok(())
    }
}
