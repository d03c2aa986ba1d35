//! Configuration, orchestration and reporting for `scfem-core` runs.
//!
//! The `scfem` binary wraps these modules: TOML configs with named presets,
//! a streaming `trace.csv`, `final_state.json`, SVG mesh and convergence
//! plots, and comparison of two traces.

pub mod compare;
pub mod config;
pub mod error;
pub mod expr;
pub mod run;
pub mod svg;
pub mod trace;

pub use error::{CliError, Result};

/// Environment variable holding the worker thread count.
pub const THREADS_ENV: &str = "SCFEM_THREADS";

/// Sizes the global rayon pool from [`THREADS_ENV`], if set.
pub fn init_threads() -> Result<()> {
    let Ok(v) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let n: usize = v.trim().parse().ok().filter(|&n| n > 0).ok_or_else(|| {
        CliError::Config(format!(
            "{THREADS_ENV} must be a positive integer, got `{v}`"
        ))
    })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Config(e.to_string()))
}
