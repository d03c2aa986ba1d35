//! Runs a configuration and writes its artifacts.

use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use scfem_core::adaptive::{self, AdaptiveOutcome, IterationRecord, Observer};
use serde::Serialize;

use crate::config::RunConfig;
use crate::error::{CliError, Result};
use crate::svg::{loglog_plot, mesh_svg, Series};
use crate::trace::{TraceRow, TraceWriter, TRACE_VERSION};

struct ArtifactObserver {
    trace: TraceWriter<BufWriter<File>>,
    timing: csv::Writer<File>,
    start: Instant,
    error: Option<CliError>,
    trace_path: PathBuf,
    verbose: bool,
}

impl Observer for ArtifactObserver {
    fn on_iteration(&mut self, record: &IterationRecord) {
        if self.verbose {
            eprintln!(
                "iter {:>3} {:>10} points {:>4} dofs {:>9} estimate {}",
                record.iteration,
                record.refinement.map_or("stop", |k| k.name()),
                record.num_points,
                record.total_dofs,
                record
                    .estimate()
                    .map_or("-".to_string(), |e| format!("{e:.4e}"))
            );
        }
        if self.error.is_some() {
            return;
        }
        let elapsed = self.start.elapsed().as_secs_f64();
        let path = self.trace_path.clone();
        let res = self
            .trace
            .write(&TraceRow::from(record))
            .and_then(|_| {
                self.timing
                    .write_record([record.iteration.to_string(), format!("{elapsed:.6}")])
            })
            .and_then(|_| self.timing.flush().map_err(csv::Error::from));
        if let Err(e) = res {
            self.error = Some(CliError::Csv {
                path,
                message: e.to_string(),
            });
        }
    }
}

#[derive(Serialize)]
struct PointState {
    coords: Vec<f64>,
    mesh_vertices: usize,
    mesh_elements: usize,
    mu: Option<f64>,
}

#[derive(Serialize)]
struct FinalState {
    trace_version: u32,
    problem: String,
    mode: String,
    tolerance: f64,
    converged: bool,
    iterations: usize,
    index_set: Vec<Vec<u32>>,
    total_dofs: usize,
    mu: Option<f64>,
    tau: Option<f64>,
    estimate: Option<f64>,
    qoi: Option<f64>,
    reference_qoi: Option<f64>,
    coarse_solves: usize,
    sample_solves: usize,
    enhanced_solves: usize,
    init_refinements: usize,
    points: Vec<PointState>,
}

/// A finished run and where its artifacts went.
pub struct RunReport {
    pub outcome: AdaptiveOutcome,
    pub out_dir: PathBuf,
    pub tolerance: f64,
}

impl RunReport {
    /// `Err(NotConverged)` when the run stopped at a cap.
    pub fn check_converged(&self) -> Result<()> {
        if self.outcome.converged {
            return Ok(());
        }
        let last = self.outcome.final_record();
        Err(CliError::NotConverged {
            iterations: last.map_or(0, |r| r.iteration + 1),
            estimate: last.and_then(|r| r.estimate()).unwrap_or(f64::NAN),
            tolerance: self.tolerance,
        })
    }
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).map_err(|e| CliError::io(path, e))
}

/// Runs `cfg`, writing `trace.csv`, `timing.csv`, `final_state.json` and the
/// enabled plots into `cfg.output.dir`.
pub fn run(cfg: &RunConfig, verbose: bool) -> Result<RunReport> {
    cfg.validate()?;
    let problem = cfg.build_problem()?;
    let acfg = cfg.adaptive_config();
    let dir = cfg.output.dir.clone();
    fs::create_dir_all(&dir).map_err(|e| CliError::io(&dir, e))?;

    let trace_path = dir.join("trace.csv");
    let file = File::create(&trace_path).map_err(|e| CliError::io(&trace_path, e))?;
    let trace = TraceWriter::new(BufWriter::new(file), problem.name(), acfg.mode.name())
        .map_err(|e| CliError::io(&trace_path, e))?;
    let timing_path = dir.join("timing.csv");
    let mut timing = csv::Writer::from_writer(
        File::create(&timing_path).map_err(|e| CliError::io(&timing_path, e))?,
    );
    timing
        .write_record(["iteration", "elapsed_seconds"])
        .map_err(|e| CliError::Csv {
            path: timing_path.clone(),
            message: e.to_string(),
        })?;
    let mut observer = ArtifactObserver {
        trace,
        timing,
        start: Instant::now(),
        error: None,
        trace_path: trace_path.clone(),
        verbose,
    };
    let outcome = adaptive::run(problem.as_ref(), &acfg, &mut observer)?;
    if let Some(e) = observer.error.take() {
        return Err(e);
    }
    observer
        .trace
        .into_inner()
        .and_then(|mut w| w.flush().map_err(|e| e.to_string()))
        .map_err(|message| CliError::Csv {
            path: trace_path.clone(),
            message,
        })?;

    let last = outcome.final_record();
    let state = FinalState {
        trace_version: TRACE_VERSION,
        problem: problem.name().to_string(),
        mode: acfg.mode.name().to_string(),
        tolerance: acfg.tolerance,
        converged: outcome.converged,
        iterations: outcome.trace.records.len(),
        index_set: outcome
            .basis
            .index_set()
            .iter()
            .map(|nu| nu.entries().to_vec())
            .collect(),
        total_dofs: last.map_or(0, |r| r.total_dofs),
        mu: last.and_then(|r| r.mu),
        tau: last.and_then(|r| r.tau),
        estimate: last.and_then(|r| r.estimate()),
        qoi: last.and_then(|r| r.qoi),
        reference_qoi: problem.reference_qoi(),
        coarse_solves: outcome.stats.coarse_solves,
        sample_solves: outcome.stats.sample_solves,
        enhanced_solves: outcome.stats.enhanced_solves,
        init_refinements: outcome.stats.init_refinements,
        points: outcome
            .states
            .iter()
            .map(|s| PointState {
                coords: s.point.coords().to_vec(),
                mesh_vertices: s.mesh.num_vertices(),
                mesh_elements: s.mesh.num_elements(),
                mu: s.indicator.as_ref().map(|i| i.total),
            })
            .collect(),
    };
    let json = serde_json::to_string_pretty(&state).expect("final state serialises");
    write_file(&dir.join("final_state.json"), &(json + "\n"))?;

    if cfg.output.mesh_plots {
        let mdir = dir.join("meshes");
        fs::create_dir_all(&mdir).map_err(|e| CliError::io(&mdir, e))?;
        write_file(
            &mdir.join("initial.svg"),
            &mesh_svg(&outcome.initial_mesh, "initial mesh"),
        )?;
        for (k, s) in outcome
            .states
            .iter()
            .take(cfg.output.max_mesh_plots)
            .enumerate()
        {
            let coords: Vec<String> = s.point.coords().iter().map(|c| format!("{c:.4}")).collect();
            let title = format!(
                "y = ({}), {} vertices, {} elements",
                coords.join(", "),
                s.mesh.num_vertices(),
                s.mesh.num_elements()
            );
            write_file(
                &mdir.join(format!("point_{k:03}.svg")),
                &mesh_svg(&s.mesh, &title),
            )?;
        }
    }
    if cfg.output.convergence_plot {
        let data: Vec<(f64, f64)> = outcome
            .trace
            .records
            .iter()
            .filter_map(|r| Some((r.total_dofs as f64, r.estimate()?)))
            .collect();
        let mut series = vec![Series::data(
            &format!("mu + tau ({})", acfg.mode.name()),
            data.clone(),
        )];
        if let Some(r) = Series::reference_slope(&data, -0.5) {
            series.push(r);
        }
        let svg = loglog_plot(
            &format!("{}: estimate vs dofs", problem.name()),
            "total dofs",
            "mu + tau",
            &series,
        );
        write_file(&dir.join("convergence.svg"), &svg)?;
    }
    Ok(RunReport {
        outcome,
        out_dir: dir,
        tolerance: acfg.tolerance,
    })
}
