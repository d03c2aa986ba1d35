//! Comparison of two traces of the same problem.

use serde::Serialize;

use crate::error::{CliError, Result};
use crate::svg::{loglog_plot, Series};
use crate::trace::Trace;

/// Least-squares slope of `log y` against `log x`; `None` for fewer than two
/// distinct positive abscissae.
pub fn loglog_slope(points: &[(f64, f64)]) -> Option<f64> {
    let pts: Vec<(f64, f64)> = points
        .iter()
        .filter(|(x, y)| *x > 0.0 && *y > 0.0)
        .map(|(x, y)| (x.ln(), y.ln()))
        .collect();
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    (pts.len() >= 2 && sxx > 0.0).then(|| sxy / sxx)
}

/// Slope over the last `window` estimates of a trace.
pub fn tail_slope(trace: &Trace, window: usize) -> Option<f64> {
    let est = trace.estimates();
    loglog_slope(&est[est.len().saturating_sub(window)..])
}

/// Dofs of the first row whose estimate is at most `tol`.
pub fn dofs_at(trace: &Trace, tol: f64) -> Option<usize> {
    trace
        .rows
        .iter()
        .find(|r| r.estimate.is_some_and(|e| e <= tol))
        .map(|r| r.dofs)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TraceSummary {
    pub mode: String,
    pub iterations: usize,
    pub final_dofs: usize,
    pub final_estimate: Option<f64>,
    pub slope: Option<f64>,
    pub dofs_at_matched: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Comparison {
    pub problem: String,
    pub window: usize,
    /// The smallest estimate both runs reach.
    pub matched_tolerance: Option<f64>,
    pub a: TraceSummary,
    pub b: TraceSummary,
    /// `dofs_b / dofs_a` at the matched tolerance.
    pub dof_ratio: Option<f64>,
}

pub fn compare(a: &Trace, b: &Trace, window: usize) -> Result<Comparison> {
    if a.meta.problem != b.meta.problem {
        return Err(CliError::Mismatch(format!(
            "problem `{}` vs `{}`",
            a.meta.problem, b.meta.problem
        )));
    }
    let best = |t: &Trace| {
        t.estimates()
            .iter()
            .map(|p| p.1)
            .fold(None, |m: Option<f64>, e| Some(m.map_or(e, |m| m.min(e))))
    };
    let matched = match (best(a), best(b)) {
        (Some(x), Some(y)) => Some(x.max(y)),
        _ => None,
    };
    let summary = |t: &Trace| TraceSummary {
        mode: t.meta.mode.clone(),
        iterations: t.rows.len(),
        final_dofs: t.rows.last().map_or(0, |r| r.dofs),
        final_estimate: t.rows.iter().rev().find_map(|r| r.estimate),
        slope: tail_slope(t, window),
        dofs_at_matched: matched.and_then(|m| dofs_at(t, m)),
    };
    let (sa, sb) = (summary(a), summary(b));
    let dof_ratio = match (sa.dofs_at_matched, sb.dofs_at_matched) {
        (Some(x), Some(y)) if x > 0 => Some(y as f64 / x as f64),
        _ => None,
    };
    Ok(Comparison {
        problem: a.meta.problem.clone(),
        window,
        matched_tolerance: matched,
        a: sa,
        b: sb,
        dof_ratio,
    })
}

pub fn comparison_svg(a: &Trace, b: &Trace, labels: (&str, &str)) -> String {
    let mut series = vec![
        Series::data(labels.0, a.estimates()),
        Series::data(labels.1, b.estimates()),
    ];
    let all: Vec<(f64, f64)> = a.estimates().into_iter().chain(b.estimates()).collect();
    if let Some(r) = Series::reference_slope(&all, -0.5) {
        series.push(r);
    }
    loglog_plot(
        &format!("{}: estimate vs dofs", a.meta.problem),
        "total dofs",
        "mu + tau",
        &series,
    )
}
