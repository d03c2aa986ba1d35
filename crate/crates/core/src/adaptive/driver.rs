use alloc::collections::BTreeMap;
use alloc::sync::Arc;
use alloc::vec::Vec;

use super::init_mesh::init_mesh_for_point;
use super::marking::{mark, Marking, WeightedIndicator};
use super::{AdaptiveConfig, AdaptiveTrace, IterationRecord, Mode, Observer, RefinementKind};
use crate::estimators::{
    detail_gradient, gradient_bochner_norm, parametric_analysis, qoi_estimate, spatial_indicator,
    ParametricAnalysis, SpatialIndicator,
};
use crate::fem::{FemFunction, GradientField};
use crate::mesh::{initial_mesh, Triangulation};
use crate::problems::{solve_sample, ParametricProblem};
use crate::sparse_grid::{
    generated_points, grid_points, CollocationPoint, MultiIndex, MultiIndexSet, SparseGridBasis,
};
use crate::{par, Error, Result};

/// Mesh, Galerkin solution and cached estimates of one active point.
#[derive(Clone, Debug)]
pub struct CollocationState {
    pub point: CollocationPoint,
    pub mesh: Arc<Triangulation>,
    pub solution: FemFunction,
    /// Indicator for the current mesh, if computed.
    pub indicator: Option<SpatialIndicator>,
    /// Gradient of `û_z − u_z`, with `û_z` the solution on the uniform
    /// refinement of the current mesh, if computed.
    pub detail: Option<GradientField>,
}

impl CollocationState {
    fn new(point: CollocationPoint, solution: FemFunction) -> Self {
        CollocationState {
            point,
            mesh: solution.mesh().clone(),
            solution,
            indicator: None,
            detail: None,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RunStats {
    /// Solves on `T_0` for the parametric indicators (multilevel only).
    pub coarse_solves: usize,
    /// Solves on the working meshes.
    pub sample_solves: usize,
    /// Solves on uniformly refined meshes for `μ_ℓ`.
    pub enhanced_solves: usize,
    /// Refinements performed while initialising meshes of new points.
    pub init_refinements: usize,
}

#[derive(Clone, Debug)]
pub struct AdaptiveOutcome {
    pub trace: AdaptiveTrace,
    pub converged: bool,
    pub basis: SparseGridBasis,
    /// Active points in the order of `basis.points()`.
    pub states: Vec<CollocationState>,
    pub initial_mesh: Arc<Triangulation>,
    pub stats: RunStats,
}

impl AdaptiveOutcome {
    pub fn final_record(&self) -> Option<&IterationRecord> {
        self.trace.records.last()
    }
}

/// Runs the driver selected by `cfg.mode`.
pub fn run(
    problem: &dyn ParametricProblem,
    cfg: &AdaptiveConfig,
    observer: &mut dyn Observer,
) -> Result<AdaptiveOutcome> {
    match cfg.mode {
        Mode::Multilevel => run_multilevel(problem, cfg, observer),
        Mode::SingleLevel => run_single_level(problem, cfg, observer),
    }
}

fn coarse_mesh(
    problem: &dyn ParametricProblem,
    cfg: &AdaptiveConfig,
) -> Result<Arc<Triangulation>> {
    cfg.validate()?;
    if problem.parameter_dim() == 0 {
        return Err(Error::InvalidConfig("problem has no parameters".into()));
    }
    let res = cfg.resolution.unwrap_or(problem.default_resolution());
    let coarse = initial_mesh(problem.domain(), res)?;
    Ok(Arc::new(Triangulation::from_coarse(Arc::new(coarse))))
}

fn enhanced_points(set: &MultiIndexSet) -> Result<Vec<CollocationPoint>> {
    let margin = MultiIndexSet::from_indices(set.dim(), set.reduced_margin()?)?;
    Ok(grid_points(&set.union(&margin)?))
}

fn solve_all(
    problem: &dyn ParametricProblem,
    jobs: &[(CollocationPoint, Arc<Triangulation>, Option<FemFunction>)],
    cfg: &AdaptiveConfig,
) -> Result<Vec<FemFunction>> {
    par::try_map(jobs, |(z, mesh, guess)| {
        let g = match guess {
            Some(u) => Some(u.prolongate(mesh)?),
            None => None,
        };
        solve_sample(
            problem,
            mesh,
            z.coords(),
            g.as_ref().map(|u| u.coeffs()),
            &cfg.solver,
        )
    })
}

/// Fills in missing indicators and, when `with_enhanced`, the enhanced
/// solutions of all states.
fn complete_states(
    problem: &dyn ParametricProblem,
    states: &mut [CollocationState],
    with_enhanced: bool,
    cfg: &AdaptiveConfig,
    stats: &mut RunStats,
) -> Result<()> {
    let need: Vec<usize> = (0..states.len())
        .filter(|&i| states[i].indicator.is_none())
        .collect();
    let inds = par::try_map(&need, |&i| {
        let s = &states[i];
        spatial_indicator(problem, &s.solution, s.point.coords(), cfg.local_scaling)
    })?;
    for (i, ind) in need.into_iter().zip(inds) {
        states[i].indicator = Some(ind);
    }
    if with_enhanced {
        let need: Vec<usize> = (0..states.len())
            .filter(|&i| states[i].detail.is_none())
            .collect();
        let details = par::try_map(&need, |&i| {
            let s = &states[i];
            let fine = Arc::new(s.mesh.uniform_refine());
            let guess = s.solution.prolongate(&fine)?;
            let uh = solve_sample(
                problem,
                &fine,
                s.point.coords(),
                Some(guess.coeffs()),
                &cfg.solver,
            )?;
            detail_gradient(&s.solution, &uh)
        })?;
        stats.enhanced_solves += details.len();
        for (i, d) in need.into_iter().zip(details) {
            states[i].detail = Some(d);
        }
    }
    Ok(())
}

struct Snapshot {
    record: IterationRecord,
    analysis: ParametricAnalysis,
    norms: Vec<f64>,
}

/// Steps shared by both drivers once all states are solved: indicators,
/// parametric analysis, optional global estimates and the base record.
#[allow(clippy::too_many_arguments)]
fn snapshot(
    problem: &dyn ParametricProblem,
    iteration: usize,
    basis: &SparseGridBasis,
    states: &mut [CollocationState],
    samples: &BTreeMap<CollocationPoint, FemFunction>,
    estimate: bool,
    cfg: &AdaptiveConfig,
    stats: &mut RunStats,
) -> Result<Snapshot> {
    complete_states(problem, states, estimate, cfg, stats)?;
    let analysis = parametric_analysis(basis, samples)?;
    let norms = basis.lagrange_norms();
    let spatial_sum: f64 = states
        .iter()
        .zip(&norms)
        .map(|(s, n)| s.indicator.as_ref().expect("indicator computed").total * n)
        .sum();
    let parametric_sum: f64 = analysis.indicators.iter().map(|p| p.value).sum();
    let (mut mu, mut tau, mut qoi) = (None, None, None);
    if estimate {
        let gram = basis.gram();
        let details: Vec<&GradientField> = states
            .iter()
            .map(|s| s.detail.as_ref().expect("detail computed"))
            .collect();
        mu = Some(gradient_bochner_norm(&gram, &details)?);
        let sols: Vec<FemFunction> = states.iter().map(|s| s.solution.clone()).collect();
        tau = Some(analysis.tau);
        if let Some(scale) = problem.qoi_scale() {
            qoi = Some(qoi_estimate(&gram, &sols, scale)?);
        }
    }
    let mesh_sizes: Vec<usize> = states.iter().map(|s| s.mesh.num_vertices()).collect();
    let record = IterationRecord {
        iteration,
        refinement: None,
        index_set: basis.index_set().iter().cloned().collect(),
        num_points: states.len(),
        total_dofs: mesh_sizes.iter().sum(),
        mesh_sizes,
        spatial_sum,
        parametric_sum,
        mu,
        tau,
        qoi,
        marked: 0,
    };
    Ok(Snapshot {
        record,
        analysis,
        norms,
    })
}

fn stop_reason(record: &IterationRecord, cfg: &AdaptiveConfig) -> (bool, bool) {
    let converged = record.estimate().is_some_and(|e| e < cfg.tolerance);
    let capped = record.iteration + 1 >= cfg.max_iterations
        || cfg.max_dofs.is_some_and(|m| record.total_dofs >= m);
    (converged, capped)
}

fn will_cap(iteration: usize, dofs: usize, cfg: &AdaptiveConfig) -> bool {
    iteration + 1 >= cfg.max_iterations || cfg.max_dofs.is_some_and(|m| dofs >= m)
}

fn weighted<'a>(states: &'a [CollocationState], norms: &[f64]) -> Vec<WeightedIndicator<'a>> {
    states
        .iter()
        .zip(norms)
        .map(|(s, &w)| WeightedIndicator {
            point: &s.point,
            mesh: &s.mesh,
            indicator: s.indicator.as_ref().expect("indicator computed"),
            weight: w,
        })
        .collect()
}

fn enlarge(
    set: &MultiIndexSet,
    marked: &[MultiIndex],
) -> Result<(MultiIndexSet, Vec<CollocationPoint>)> {
    let mut new_set = set.clone();
    let mut new_points = Vec::new();
    for nu in marked {
        new_points.extend(generated_points(set, nu)?);
        new_set.insert(nu.clone())?;
    }
    new_points.sort();
    debug_assert!(new_set.is_monotone());
    Ok((new_set, new_points))
}

/// Multilevel adaptive stochastic collocation: one adaptively refined mesh
/// per collocation point.
pub fn run_multilevel(
    problem: &dyn ParametricProblem,
    cfg: &AdaptiveConfig,
    observer: &mut dyn Observer,
) -> Result<AdaptiveOutcome> {
    let t0 = coarse_mesh(problem, cfg)?;
    let mut stats = RunStats::default();
    let mut coarse: BTreeMap<CollocationPoint, FemFunction> = BTreeMap::new();
    let mut basis = SparseGridBasis::new(MultiIndexSet::initial(problem.parameter_dim()))?;
    let mut states: Vec<CollocationState> = Vec::new();
    let mut trace = AdaptiveTrace::default();

    for iteration in 0.. {
        // (i) coarse-mesh samples on the enhanced grid, computed once per point
        let missing: Vec<(CollocationPoint, Arc<Triangulation>, Option<FemFunction>)> =
            enhanced_points(basis.index_set())?
                .into_iter()
                .filter(|z| !coarse.contains_key(z))
                .map(|z| (z, t0.clone(), None))
                .collect();
        let sols = solve_all(problem, &missing, cfg)?;
        stats.coarse_solves += sols.len();
        for ((z, _, _), u) in missing.into_iter().zip(sols) {
            coarse.insert(z, u);
        }
        if states.is_empty() {
            states = basis
                .points()
                .iter()
                .map(|z| CollocationState::new(z.clone(), coarse[z].clone()))
                .collect();
        }

        // (ii), (iii), (vii)
        let dofs: usize = states.iter().map(|s| s.mesh.num_vertices()).sum();
        let estimate = iteration % cfg.estimate_period == 0 || will_cap(iteration, dofs, cfg);
        let Snapshot {
            mut record,
            analysis,
            norms,
        } = snapshot(
            problem,
            iteration,
            &basis,
            &mut states,
            &coarse,
            estimate,
            cfg,
            &mut stats,
        )?;
        observer.on_states(&record, &basis, &states);
        let (converged, capped) = stop_reason(&record, cfg);
        if converged || capped {
            observer.on_iteration(&record);
            trace.records.push(record);
            return Ok(AdaptiveOutcome {
                trace,
                converged,
                basis,
                states,
                initial_mesh: t0,
                stats,
            });
        }

        // (iv)
        let marking = mark(&weighted(&states, &norms), &analysis.indicators, cfg)?;
        match marking {
            Marking::Spatial(per_point) => {
                // (v)
                let mut jobs = Vec::new();
                let mut which = Vec::new();
                for (i, marked) in per_point.iter().enumerate() {
                    if marked.is_empty() {
                        continue;
                    }
                    let s = &states[i];
                    let edges: Vec<usize> = marked
                        .iter()
                        .map(|&k| s.mesh.interior_edge_list()[k] as usize)
                        .collect();
                    let mesh = Arc::new(s.mesh.refine(&edges)?);
                    jobs.push((s.point.clone(), mesh, Some(s.solution.clone())));
                    which.push(i);
                }
                let sols = solve_all(problem, &jobs, cfg)?;
                stats.sample_solves += sols.len();
                for (i, u) in which.into_iter().zip(sols) {
                    states[i] = CollocationState::new(states[i].point.clone(), u);
                }
                record.refinement = Some(RefinementKind::Spatial);
                record.marked = per_point.iter().map(Vec::len).sum();
            }
            Marking::Parametric(marked) => {
                // (vi)
                let (new_set, new_points) = enlarge(basis.index_set(), &marked)?;
                let new_basis = SparseGridBasis::new(new_set)?;
                let new_norms = new_basis.lagrange_norms();
                let norm_of = |z: &CollocationPoint| {
                    new_norms[new_basis.position(z).expect("point is active")]
                };
                let tol = states
                    .iter()
                    .map(|s| {
                        s.indicator.as_ref().expect("indicator computed").total * norm_of(&s.point)
                    })
                    .sum::<f64>()
                    / states.len() as f64;
                let results = par::try_map(&new_points, |z| {
                    init_mesh_for_point(problem, z, &t0, coarse.get(z), tol, norm_of(z), cfg)
                })?;
                for (z, r) in new_points.into_iter().zip(results) {
                    stats.init_refinements += r.iterations;
                    stats.sample_solves += r.iterations;
                    let mut s = CollocationState::new(z, r.solution);
                    s.indicator = Some(r.indicator);
                    states.push(s);
                }
                states.sort_by(|a, b| a.point.cmp(&b.point));
                basis = new_basis;
                record.refinement = Some(RefinementKind::Parametric);
                record.marked = marked.len();
            }
        }
        observer.on_iteration(&record);
        trace.records.push(record);
    }
    unreachable!("the iteration loop only exits by returning")
}

/// Single-level adaptive stochastic collocation: all points share one mesh,
/// spatially refined by the union of per-point Dörfler sets.
pub fn run_single_level(
    problem: &dyn ParametricProblem,
    cfg: &AdaptiveConfig,
    observer: &mut dyn Observer,
) -> Result<AdaptiveOutcome> {
    let t0 = coarse_mesh(problem, cfg)?;
    let mut stats = RunStats::default();
    let mut mesh = t0.clone();
    let mut samples: BTreeMap<CollocationPoint, FemFunction> = BTreeMap::new();
    let mut basis = SparseGridBasis::new(MultiIndexSet::initial(problem.parameter_dim()))?;
    let mut states: Vec<CollocationState> = Vec::new();
    let mut trace = AdaptiveTrace::default();

    for iteration in 0.. {
        // (i) every sample of the enhanced grid on the shared mesh
        let missing: Vec<(CollocationPoint, Arc<Triangulation>, Option<FemFunction>)> =
            enhanced_points(basis.index_set())?
                .into_iter()
                .filter(|z| !samples.contains_key(z))
                .map(|z| (z, mesh.clone(), None))
                .collect();
        let sols = solve_all(problem, &missing, cfg)?;
        stats.sample_solves += sols.len();
        for ((z, _, _), u) in missing.into_iter().zip(sols) {
            samples.insert(z, u);
        }
        let mut fresh: Vec<CollocationState> = Vec::with_capacity(basis.len());
        for z in basis.points() {
            match states.iter().position(|s| &s.point == z) {
                Some(i) => fresh.push(states.swap_remove(i)),
                None => fresh.push(CollocationState::new(z.clone(), samples[z].clone())),
            }
        }
        states = fresh;

        let dofs = states.len() * mesh.num_vertices();
        let estimate = iteration % cfg.estimate_period == 0 || will_cap(iteration, dofs, cfg);
        let Snapshot {
            mut record,
            analysis,
            norms,
        } = snapshot(
            problem,
            iteration,
            &basis,
            &mut states,
            &samples,
            estimate,
            cfg,
            &mut stats,
        )?;
        observer.on_states(&record, &basis, &states);
        let (converged, capped) = stop_reason(&record, cfg);
        if converged || capped {
            observer.on_iteration(&record);
            trace.records.push(record);
            return Ok(AdaptiveOutcome {
                trace,
                converged,
                basis,
                states,
                initial_mesh: t0,
                stats,
            });
        }

        let marking = mark(&weighted(&states, &norms), &analysis.indicators, cfg)?;
        match marking {
            Marking::Spatial(per_point) => {
                let mut edges: Vec<usize> = per_point
                    .iter()
                    .flat_map(|m| m.iter().map(|&k| mesh.interior_edge_list()[k] as usize))
                    .collect();
                edges.sort_unstable();
                edges.dedup();
                let next = Arc::new(mesh.refine(&edges)?);
                let jobs: Vec<(CollocationPoint, Arc<Triangulation>, Option<FemFunction>)> =
                    samples
                        .iter()
                        .map(|(z, u)| (z.clone(), next.clone(), Some(u.clone())))
                        .collect();
                let sols = solve_all(problem, &jobs, cfg)?;
                stats.sample_solves += sols.len();
                samples = jobs.into_iter().map(|(z, _, _)| z).zip(sols).collect();
                states = states
                    .iter()
                    .map(|s| CollocationState::new(s.point.clone(), samples[&s.point].clone()))
                    .collect();
                mesh = next;
                record.refinement = Some(RefinementKind::Spatial);
                record.marked = edges.len();
            }
            Marking::Parametric(marked) => {
                let (new_set, _) = enlarge(basis.index_set(), &marked)?;
                basis = SparseGridBasis::new(new_set)?;
                record.refinement = Some(RefinementKind::Parametric);
                record.marked = marked.len();
            }
        }
        observer.on_iteration(&record);
        trace.records.push(record);
    }
    unreachable!("the iteration loop only exits by returning")
}
