//! Problems whose data are given as formulas in `x1`, `x2`, `y1 … yM`.

use exmex::prelude::*;
use exmex::FlatEx;
use scfem_core::mesh::Domain;
use scfem_core::problems::{ParametricProblem, ProblemKind};

use crate::error::{CliError, Result};

const MAX_VARS: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Slot {
    X(usize),
    Y(usize),
}

/// A parsed formula with its variables resolved to coordinates.
#[derive(Clone, Debug)]
pub struct Formula {
    source: String,
    expr: FlatEx<f64>,
    slots: Vec<Slot>,
}

impl Formula {
    pub fn parse(source: &str, dim: usize) -> Result<Self> {
        let expr = exmex::parse::<f64>(source)
            .map_err(|e| CliError::Config(format!("cannot parse `{source}`: {e}")))?;
        let mut slots = Vec::new();
        for name in expr.var_names() {
            slots.push(resolve(name, dim).ok_or_else(|| {
                CliError::Config(format!(
                    "unknown variable `{name}` in `{source}`; use x1, x2 and y1..y{dim}"
                ))
            })?);
        }
        if slots.len() > MAX_VARS {
            return Err(CliError::Config(format!(
                "`{source}` uses more than {MAX_VARS} variables"
            )));
        }
        Ok(Formula {
            source: source.to_string(),
            expr,
            slots,
        })
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    /// NaN when the expression cannot be evaluated at this point.
    pub fn eval(&self, x: [f64; 2], y: &[f64]) -> f64 {
        let mut buf = [0.0; MAX_VARS];
        for (v, s) in buf.iter_mut().zip(&self.slots) {
            *v = match *s {
                Slot::X(i) => x[i],
                Slot::Y(i) => y[i],
            };
        }
        self.expr.eval(&buf[..self.slots.len()]).unwrap_or(f64::NAN)
    }
}

fn resolve(name: &str, dim: usize) -> Option<Slot> {
    let (head, tail) = name.split_at(1);
    let k: usize = tail.parse().ok()?;
    if tail.starts_with('0') || k == 0 {
        return None;
    }
    match head {
        "x" if k <= 2 => Some(Slot::X(k - 1)),
        "y" if k <= dim => Some(Slot::Y(k - 1)),
        _ => None,
    }
}

/// User-defined parametric problem.
#[derive(Clone, Debug)]
pub struct FormulaProblem {
    name: String,
    kind: ProblemKind,
    dim: usize,
    domain: Domain,
    resolution: usize,
    coefficient: Option<Formula>,
    rhs: Formula,
    bounds: Option<(f64, f64)>,
    qoi_scale: Option<f64>,
}

impl FormulaProblem {
    /// `coefficient` is required for coefficient problems and rejected for
    /// right-hand-side problems.
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        name: &str,
        kind: ProblemKind,
        dim: usize,
        domain: Domain,
        resolution: usize,
        coefficient: Option<&str>,
        rhs: &str,
        bounds: Option<(f64, f64)>,
        qoi_scale: Option<f64>,
    ) -> Result<Self> {
        let coefficient = match (kind, coefficient) {
            (ProblemKind::ParametricCoefficient, Some(c)) => Some(Formula::parse(c, dim)?),
            (ProblemKind::ParametricCoefficient, None) => {
                return Err(CliError::Config(
                    "a coefficient problem needs `coefficient`".into(),
                ))
            }
            (ProblemKind::ParametricRhs, Some(_)) => {
                return Err(CliError::Config(
                    "`coefficient` is fixed to 1 for rhs problems".into(),
                ))
            }
            (ProblemKind::ParametricRhs, None) => None,
        };
        if let Some((lo, hi)) = bounds {
            if !(lo > 0.0 && hi >= lo) {
                return Err(CliError::Config(format!(
                    "coefficient bounds must satisfy 0 < min <= max, got ({lo}, {hi})"
                )));
            }
        }
        Ok(FormulaProblem {
            name: name.to_string(),
            kind,
            dim,
            domain,
            resolution,
            coefficient,
            rhs: Formula::parse(rhs, dim)?,
            bounds,
            qoi_scale,
        })
    }
}

impl ParametricProblem for FormulaProblem {
    fn name(&self) -> &str {
        &self.name
    }

    fn kind(&self) -> ProblemKind {
        self.kind
    }

    fn parameter_dim(&self) -> usize {
        self.dim
    }

    fn domain(&self) -> Domain {
        self.domain
    }

    fn default_resolution(&self) -> usize {
        self.resolution
    }

    fn coefficient(&self, x: [f64; 2], y: &[f64]) -> f64 {
        self.coefficient.as_ref().map_or(1.0, |c| c.eval(x, y))
    }

    fn rhs(&self, x: [f64; 2], y: &[f64]) -> f64 {
        self.rhs.eval(x, y)
    }

    fn coefficient_bounds(&self) -> Option<(f64, f64)> {
        match self.kind {
            ProblemKind::ParametricRhs => Some((1.0, 1.0)),
            ProblemKind::ParametricCoefficient => self.bounds,
        }
    }

    fn qoi_scale(&self) -> Option<f64> {
        self.qoi_scale
    }
}
