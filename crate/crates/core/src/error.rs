use alloc::string::String;
use alloc::vec::Vec;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("invalid level {0}: levels start at 1 and are capped at {max}", max = crate::sparse_grid::MAX_LEVEL)]
    InvalidLevel(u32),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("contract violation: {0}")]
    Contract(String),
    #[error("incompatible meshes: {0}")]
    IncompatibleMesh(&'static str),
    #[error("unknown domain `{0}`")]
    UnknownDomain(String),
    #[error("coefficient is not positive ({value}) at x = ({x0}, {x1})")]
    CoercivityViolation { value: f64, x0: f64, x1: f64 },
    #[error("conjugate gradients stopped after {iterations} iterations with relative residual {residual:e}")]
    SolverFailure {
        iterations: usize,
        residual: f64,
        history: Vec<f64>,
    },
    #[error("parametric refinement requested but the reduced margin is empty")]
    CannotEnrich,
    #[error("mesh initialisation stopped after {iterations} iterations: estimate {estimate:e} vs tol {tol:e}")]
    InitializationFailure {
        iterations: usize,
        estimate: f64,
        tol: f64,
    },
    #[error("no sign change while bracketing a root on [{lo}, {hi}]")]
    RootFinding { lo: f64, hi: f64 },
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

impl Error {
    pub(crate) fn contract(msg: impl Into<String>) -> Self {
        Error::Contract(msg.into())
    }
}
