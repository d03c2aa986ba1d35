//! TOML run configuration and the built-in presets.
//!
//! A file may name a `preset`; its own keys then override the preset's.

use std::path::{Path, PathBuf};

use scfem_core::adaptive::{AdaptiveConfig, Mode};
use scfem_core::estimators::LocalScaling;
use scfem_core::fem::SolverOptions;
use scfem_core::problems::{
    ExpKlProblem, FourierProblem, OnePeakProblem, ParametricProblem, ProblemKind,
};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};
use crate::expr::FormulaProblem;

pub const PRESET_NAMES: [&str; 3] = ["paper-testI", "paper-testII", "paper-testIII"];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    /// Base preset; only meaningful in files.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub preset: Option<String>,
    pub problem: ProblemSection,
    #[serde(default)]
    pub adaptive: AdaptiveSection,
    #[serde(default)]
    pub output: OutputSection,
    /// Seed for Monte Carlo checks; the adaptive run itself is deterministic.
    #[serde(default)]
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemSection {
    /// `testI`, `testII`, `testIII` or `custom`.
    pub name: String,
    /// Number of parameters `M`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim: Option<usize>,
    /// Cells per unit side of the initial mesh.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub resolution: Option<usize>,
    /// Fourier amplitude of test I.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub amplitude: Option<f64>,
    /// Standard deviation of the test II field.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sigma: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub domain: Option<String>,
    /// `coefficient` or `rhs`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coefficient: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rhs: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coefficient_min: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coefficient_max: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub qoi_scale: Option<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModeName {
    Multilevel,
    SingleLevel,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ScalingName {
    Energy,
    Raw,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AdaptiveSection {
    pub theta_x: f64,
    pub theta_c: f64,
    pub vartheta: f64,
    pub theta_init: f64,
    pub tolerance: f64,
    pub estimate_period: usize,
    pub mode: ModeName,
    pub max_iterations: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_dofs: Option<usize>,
    pub init_max_iterations: usize,
    pub local_scaling: ScalingName,
    pub solver_tolerance: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub solver_max_iterations: Option<usize>,
}

impl Default for AdaptiveSection {
    fn default() -> Self {
        let d = AdaptiveConfig::with_tolerance(6e-3);
        AdaptiveSection {
            theta_x: d.theta_x,
            theta_c: d.theta_c,
            vartheta: d.vartheta,
            theta_init: d.theta_init,
            tolerance: d.tolerance,
            estimate_period: d.estimate_period,
            mode: ModeName::Multilevel,
            max_iterations: d.max_iterations,
            max_dofs: d.max_dofs,
            init_max_iterations: d.init_max_iterations,
            local_scaling: ScalingName::Energy,
            solver_tolerance: d.solver.rel_tol,
            solver_max_iterations: d.solver.max_iterations,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OutputSection {
    pub dir: PathBuf,
    pub mesh_plots: bool,
    /// Only the first this many points (in grid order) get a mesh plot.
    pub max_mesh_plots: usize,
    pub convergence_plot: bool,
}

impl Default for OutputSection {
    fn default() -> Self {
        OutputSection {
            dir: PathBuf::from("out"),
            mesh_plots: true,
            max_mesh_plots: 16,
            convergence_plot: true,
        }
    }
}

fn builtin(name: &str) -> ProblemSection {
    ProblemSection {
        name: name.to_string(),
        dim: None,
        resolution: None,
        amplitude: None,
        sigma: None,
        domain: None,
        kind: None,
        coefficient: None,
        rhs: None,
        coefficient_min: None,
        coefficient_max: None,
        qoi_scale: None,
    }
}

/// The named presets: `ϑ = 1`, `θ_X = θ_C = 0.3`, tolerance `6e-3` for
/// tests I and II and `1e-1` for test III.
pub fn preset(name: &str) -> Result<RunConfig> {
    let (problem, dim, tolerance) = match name {
        "paper-testI" => ("testI", 4, 6e-3),
        "paper-testII" => ("testII", 4, 6e-3),
        "paper-testIII" => ("testIII", 2, 1e-1),
        other => {
            return Err(CliError::Config(format!(
                "unknown preset `{other}`; expected one of {}",
                PRESET_NAMES.join(", ")
            )))
        }
    };
    let mut problem = builtin(problem);
    problem.dim = Some(dim);
    Ok(RunConfig {
        preset: None,
        problem,
        adaptive: AdaptiveSection {
            tolerance,
            ..AdaptiveSection::default()
        },
        output: OutputSection {
            dir: PathBuf::from(format!("out/{name}")),
            ..OutputSection::default()
        },
        seed: 0,
    })
}

fn merge(base: &mut toml::Table, over: toml::Table) {
    for (k, v) in over {
        match (base.get_mut(&k), v) {
            (Some(toml::Value::Table(b)), toml::Value::Table(o)) => merge(b, o),
            (_, v) => {
                base.insert(k, v);
            }
        }
    }
}

impl RunConfig {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        let table: toml::Table =
            toml::from_str(text).map_err(|e| CliError::Config(e.to_string()))?;
        let merged = match table.get("preset") {
            Some(toml::Value::String(name)) => {
                let base = preset(name)?;
                let mut base =
                    toml::Table::try_from(&base).map_err(|e| CliError::Config(e.to_string()))?;
                merge(&mut base, table);
                base
            }
            Some(_) => return Err(CliError::Config("`preset` must be a string".into())),
            None => table,
        };
        let cfg: RunConfig = merged
            .try_into()
            .map_err(|e: toml::de::Error| CliError::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        Self::from_toml_str(&text).map_err(|e| match e {
            CliError::Config(m) => CliError::Config(format!("{}: {m}", path.display())),
            other => other,
        })
    }

    pub fn to_toml_string(&self) -> String {
        toml::to_string(self).expect("config serialises")
    }

    pub fn adaptive_config(&self) -> AdaptiveConfig {
        let a = &self.adaptive;
        AdaptiveConfig {
            theta_x: a.theta_x,
            theta_c: a.theta_c,
            vartheta: a.vartheta,
            theta_init: a.theta_init,
            tolerance: a.tolerance,
            estimate_period: a.estimate_period,
            mode: match a.mode {
                ModeName::Multilevel => Mode::Multilevel,
                ModeName::SingleLevel => Mode::SingleLevel,
            },
            max_iterations: a.max_iterations,
            max_dofs: a.max_dofs,
            init_max_iterations: a.init_max_iterations,
            local_scaling: match a.local_scaling {
                ScalingName::Energy => LocalScaling::Energy,
                ScalingName::Raw => LocalScaling::Raw,
            },
            solver: SolverOptions {
                rel_tol: a.solver_tolerance,
                max_iterations: a.solver_max_iterations,
            },
            resolution: self.problem.resolution,
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.adaptive_config()
            .validate()
            .map_err(|e| CliError::Config(e.to_string()))?;
        if self.output.dir.as_os_str().is_empty() {
            return Err(CliError::Config("output.dir must not be empty".into()));
        }
        self.build_problem().map(|_| ())
    }

    pub fn build_problem(&self) -> Result<Box<dyn ParametricProblem>> {
        let p = &self.problem;
        let custom_keys = [
            ("domain", p.domain.is_some()),
            ("kind", p.kind.is_some()),
            ("coefficient", p.coefficient.is_some()),
            ("rhs", p.rhs.is_some()),
            ("coefficient_min", p.coefficient_min.is_some()),
            ("coefficient_max", p.coefficient_max.is_some()),
            ("qoi_scale", p.qoi_scale.is_some()),
        ];
        let only = |allowed: &[&str]| -> Result<()> {
            let mut given = vec![];
            if p.amplitude.is_some() {
                given.push("amplitude");
            }
            if p.sigma.is_some() {
                given.push("sigma");
            }
            given.extend(custom_keys.iter().filter(|(_, set)| *set).map(|(k, _)| *k));
            match given.iter().find(|k| !allowed.contains(k)) {
                Some(k) => Err(CliError::Config(format!(
                    "problem `{}` does not take `{k}`",
                    p.name
                ))),
                None => Ok(()),
            }
        };
        let resolution = |default: usize| p.resolution.unwrap_or(default);
        let dim = |default: usize| -> Result<usize> {
            match p.dim.unwrap_or(default) {
                0 => Err(CliError::Config("problem.dim must be at least 1".into())),
                d => Ok(d),
            }
        };
        Ok(match p.name.as_str() {
            "testI" => {
                only(&["amplitude"])?;
                let amplitude = p.amplitude.unwrap_or(FourierProblem::DEFAULT_AMPLITUDE);
                if !(amplitude.is_finite() && amplitude >= 0.0) {
                    return Err(CliError::Config(format!(
                        "amplitude must be nonnegative, got {amplitude}"
                    )));
                }
                Box::new(FourierProblem::new(dim(4)?, amplitude, resolution(8)))
            }
            "testII" => {
                only(&["sigma"])?;
                let sigma = p.sigma.unwrap_or(ExpKlProblem::DEFAULT_SIGMA);
                if !(sigma.is_finite() && sigma > 0.0) {
                    return Err(CliError::Config(format!(
                        "sigma must be positive, got {sigma}"
                    )));
                }
                Box::new(ExpKlProblem::new(dim(4)?, sigma, resolution(4))?)
            }
            "testIII" => {
                only(&[])?;
                if dim(2)? != 2 {
                    return Err(CliError::Config("testIII has exactly 2 parameters".into()));
                }
                Box::new(OnePeakProblem::new(resolution(8)))
            }
            "custom" => {
                only(&[
                    "domain",
                    "kind",
                    "coefficient",
                    "rhs",
                    "coefficient_min",
                    "coefficient_max",
                    "qoi_scale",
                ])?;
                let domain = p
                    .domain
                    .as_deref()
                    .ok_or_else(|| CliError::Config("custom problems need `domain`".into()))?
                    .parse()
                    .map_err(|e: scfem_core::Error| CliError::Config(e.to_string()))?;
                let kind = match p.kind.as_deref() {
                    Some("coefficient") => ProblemKind::ParametricCoefficient,
                    Some("rhs") => ProblemKind::ParametricRhs,
                    Some(other) => {
                        return Err(CliError::Config(format!(
                            "kind must be `coefficient` or `rhs`, got `{other}`"
                        )))
                    }
                    None => return Err(CliError::Config("custom problems need `kind`".into())),
                };
                let rhs = p
                    .rhs
                    .as_deref()
                    .ok_or_else(|| CliError::Config("custom problems need `rhs`".into()))?;
                let bounds = match (p.coefficient_min, p.coefficient_max) {
                    (Some(lo), Some(hi)) => Some((lo, hi)),
                    (None, None) => None,
                    _ => {
                        return Err(CliError::Config(
                            "give both coefficient_min and coefficient_max or neither".into(),
                        ))
                    }
                };
                Box::new(FormulaProblem::new(
                    "custom",
                    kind,
                    dim(1)?,
                    domain,
                    resolution(4),
                    p.coefficient.as_deref(),
                    rhs,
                    bounds,
                    p.qoi_scale,
                )?)
            }
            other => {
                return Err(CliError::Config(format!(
                    "unknown problem `{other}`; expected testI, testII, testIII or custom"
                )))
            }
        })
    }
}
