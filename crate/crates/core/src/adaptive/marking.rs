use alloc::vec::Vec;
use core::cmp::Ordering;

use super::{AdaptiveConfig, Mode};
use crate::estimators::{ParametricIndicator, SpatialIndicator};
use crate::mesh::{point_cmp, Triangulation};
use crate::sparse_grid::{CollocationPoint, MultiIndex};
use crate::{Error, Result};

/// Spatial indicator of one point together with its weight `‖L_z‖`.
#[derive(Clone, Copy, Debug)]
pub struct WeightedIndicator<'a> {
    pub point: &'a CollocationPoint,
    pub mesh: &'a Triangulation,
    pub indicator: &'a SpatialIndicator,
    pub weight: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Marking {
    /// Marked interior-edge positions (indices into `SpatialIndicator::local`)
    /// per point, in input order.
    Spatial(Vec<Vec<usize>>),
    Parametric(Vec<MultiIndex>),
}

/// Length of the shortest prefix of `values` (already sorted in decreasing
/// order) whose sum reaches `theta` times the total.
pub fn dorfler_prefix(values: &[f64], theta: f64) -> usize {
    let total: f64 = values.iter().sum();
    if !(total > 0.0) {
        return 0;
    }
    let goal = theta * total;
    let mut acc = 0.0;
    for (k, v) in values.iter().enumerate() {
        acc += v;
        if acc >= goal {
            return k + 1;
        }
    }
    values.len()
}

fn desc(a: f64, b: f64) -> Ordering {
    b.partial_cmp(&a).unwrap_or(Ordering::Equal)
}

/// Positions of a minimal Dörfler set for one point's locals raised to
/// `power`; ties by midpoint coordinates.
pub(crate) fn dorfler_single(
    mesh: &Triangulation,
    local: &[f64],
    theta: f64,
    power: i32,
) -> Vec<usize> {
    let edges = mesh.interior_edge_list();
    let mut order: Vec<usize> = (0..local.len()).collect();
    let key = |k: usize| {
        if power == 2 {
            local[k] * local[k]
        } else {
            local[k]
        }
    };
    order.sort_by(|&a, &b| {
        desc(key(a), key(b)).then_with(|| {
            point_cmp(
                &mesh.edge_midpoint(edges[a] as usize),
                &mesh.edge_midpoint(edges[b] as usize),
            )
        })
    });
    let values: Vec<f64> = order.iter().map(|&k| key(k)).collect();
    let n = dorfler_prefix(&values, theta);
    let mut out = order[..n].to_vec();
    out.sort_unstable();
    out
}

/// Chooses between spatial and parametric refinement and selects what to
/// refine. Multilevel spatial marking is one cumulative Dörfler set over
/// all `(z, ξ)` with weights `‖L_z‖`; single-level marking takes a Dörfler
/// set per point (they are merged by the caller).
pub fn mark(
    spatial: &[WeightedIndicator<'_>],
    parametric: &[ParametricIndicator],
    cfg: &AdaptiveConfig,
) -> Result<Marking> {
    let spatial_sum: f64 = spatial.iter().map(|w| w.indicator.total * w.weight).sum();
    let parametric_sum: f64 = parametric.iter().map(|p| p.value).sum();
    if spatial_sum >= cfg.vartheta * parametric_sum {
        let mut out = alloc::vec![Vec::new(); spatial.len()];
        match cfg.mode {
            Mode::SingleLevel => {
                for (o, w) in out.iter_mut().zip(spatial) {
                    *o = dorfler_single(w.mesh, &w.indicator.local, cfg.theta_x, 1);
                }
            }
            Mode::Multilevel => {
                let mut entries: Vec<(usize, usize, f64)> = Vec::new();
                for (zi, w) in spatial.iter().enumerate() {
                    for (k, v) in w.indicator.local.iter().enumerate() {
                        entries.push((zi, k, v * w.weight));
                    }
                }
                entries.sort_by(|a, b| {
                    desc(a.2, b.2)
                        .then_with(|| spatial[a.0].point.cmp(spatial[b.0].point))
                        .then_with(|| {
                            let ma = spatial[a.0].mesh.edge_midpoint(
                                spatial[a.0].mesh.interior_edge_list()[a.1] as usize,
                            );
                            let mb = spatial[b.0].mesh.edge_midpoint(
                                spatial[b.0].mesh.interior_edge_list()[b.1] as usize,
                            );
                            point_cmp(&ma, &mb)
                        })
                });
                let values: Vec<f64> = entries.iter().map(|e| e.2).collect();
                let n = dorfler_prefix(&values, cfg.theta_x);
                for &(zi, k, _) in &entries[..n] {
                    out[zi].push(k);
                }
                for o in &mut out {
                    o.sort_unstable();
                }
            }
        }
        Ok(Marking::Spatial(out))
    } else {
        if parametric.is_empty() {
            return Err(Error::CannotEnrich);
        }
        let mut order: Vec<&ParametricIndicator> = parametric.iter().collect();
        order.sort_by(|a, b| desc(a.value, b.value).then_with(|| a.index.cmp(&b.index)));
        let values: Vec<f64> = order.iter().map(|p| p.value).collect();
        let n = dorfler_prefix(&values, cfg.theta_c).max(1);
        let mut marked: Vec<MultiIndex> = order[..n].iter().map(|p| p.index.clone()).collect();
        marked.sort();
        Ok(Marking::Parametric(marked))
    }
}
