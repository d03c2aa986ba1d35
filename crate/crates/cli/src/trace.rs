//! `trace.csv`: one row per adaptive iteration behind a one-line header
//! comment `# scfem-trace v<N> problem=<name> mode=<mode>`.

use std::io::Write;
use std::path::Path;

use scfem_core::adaptive::IterationRecord;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

pub const TRACE_VERSION: u32 = 1;
const MAGIC: &str = "# scfem-trace v";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TraceRow {
    pub iteration: usize,
    /// `spatial`, `parametric` or `stop`.
    pub refinement: String,
    pub points: usize,
    pub dofs: usize,
    pub spatial_sum: f64,
    pub parametric_sum: f64,
    pub mu: Option<f64>,
    pub tau: Option<f64>,
    pub estimate: Option<f64>,
    pub qoi: Option<f64>,
    pub marked: usize,
}

impl From<&IterationRecord> for TraceRow {
    fn from(r: &IterationRecord) -> Self {
        TraceRow {
            iteration: r.iteration,
            refinement: r.refinement.map_or("stop", |k| k.name()).to_string(),
            points: r.num_points,
            dofs: r.total_dofs,
            spatial_sum: r.spatial_sum,
            parametric_sum: r.parametric_sum,
            mu: r.mu,
            tau: r.tau,
            estimate: r.estimate(),
            qoi: r.qoi,
            marked: r.marked,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceMeta {
    pub version: u32,
    pub problem: String,
    pub mode: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Trace {
    pub meta: TraceMeta,
    pub rows: Vec<TraceRow>,
}

impl Trace {
    /// `(dofs, estimate)` of the rows that carry an estimate.
    pub fn estimates(&self) -> Vec<(f64, f64)> {
        self.rows
            .iter()
            .filter_map(|r| Some((r.dofs as f64, r.estimate?)))
            .collect()
    }
}

/// Streams rows to a writer, flushing after each one.
pub struct TraceWriter<W: Write> {
    inner: csv::Writer<W>,
}

impl<W: Write> TraceWriter<W> {
    pub fn new(mut out: W, problem: &str, mode: &str) -> std::io::Result<Self> {
        writeln!(out, "{MAGIC}{TRACE_VERSION} problem={problem} mode={mode}")?;
        Ok(TraceWriter {
            inner: csv::Writer::from_writer(out),
        })
    }

    pub fn write(&mut self, row: &TraceRow) -> csv::Result<()> {
        self.inner.serialize(row)?;
        self.inner.flush()?;
        Ok(())
    }

    pub fn into_inner(self) -> std::result::Result<W, String> {
        self.inner.into_inner().map_err(|e| e.to_string())
    }
}

fn parse_meta(line: &str) -> Option<TraceMeta> {
    let rest = line.strip_prefix(MAGIC)?;
    let mut parts = rest.split_whitespace();
    let version = parts.next()?.parse().ok()?;
    let (mut problem, mut mode) = (None, None);
    for p in parts {
        match p.split_once('=')? {
            ("problem", v) => problem = Some(v.to_string()),
            ("mode", v) => mode = Some(v.to_string()),
            _ => {}
        }
    }
    Some(TraceMeta {
        version,
        problem: problem?,
        mode: mode?,
    })
}

pub fn parse_trace(text: &str, origin: &Path) -> Result<Trace> {
    let err = |message: String| CliError::Csv {
        path: origin.to_path_buf(),
        message,
    };
    let (first, body) = text.split_once('\n').unwrap_or((text, ""));
    let meta = parse_meta(first.trim_end())
        .ok_or_else(|| err("missing `# scfem-trace` header line".into()))?;
    if meta.version != TRACE_VERSION {
        return Err(err(format!("unsupported trace version {}", meta.version)));
    }
    let mut rows = Vec::new();
    for r in csv::Reader::from_reader(body.as_bytes()).deserialize() {
        rows.push(r.map_err(|e| err(e.to_string()))?);
    }
    Ok(Trace { meta, rows })
}

pub fn read_trace(path: &Path) -> Result<Trace> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    parse_trace(&text, path)
}
