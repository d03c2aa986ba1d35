//! Property suites, callable from the per-module test targets and from the
//! acceptance binary. Each returns `Err` with a description on failure.

use std::collections::BTreeSet;
use std::sync::Arc;

use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use scfem_core::fem::quadrature::integrate;
use scfem_core::fem::{FemFunction, SolverOptions};
use scfem_core::mesh::{initial_mesh, overlay, prolongate, Domain, Triangulation};
use scfem_core::problems::{
    kl_eigenpairs_1d, kl_eigenpairs_2d, solve_sample, OnePeakProblem, ParametricProblem,
};
use scfem_core::sparse_grid::{
    combination_coeffs, generated_points, grid_points, CollocationPoint, MultiIndex, MultiIndexSet,
    SparseGridBasis,
};

pub type Outcome = Result<(), String>;

fn check(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn run<S: Strategy>(
    cases: u32,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Outcome {
    let config = Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    };
    TestRunner::new(config)
        .run(&strategy, test)
        .map_err(|e| e.to_string())
}

// ---- sparse grids ----

fn to_set(dim: usize, s: &BTreeSet<Vec<u32>>) -> MultiIndexSet {
    MultiIndexSet::from_indices(dim, s.iter().map(|e| MultiIndex::new(e.clone()).unwrap())).unwrap()
}

fn random_monotone_set(dim: usize, steps: usize, seed: u64) -> MultiIndexSet {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut set = MultiIndexSet::initial(dim);
    for _ in 0..steps {
        let margin = set.reduced_margin().unwrap();
        let pick = margin[rng.gen_range(0..margin.len())].clone();
        set.insert(pick).unwrap();
    }
    set
}

/// Every monotone set with `M ≤ 3` and levels `≤ 4`.
pub fn reduced_margin_matches_brute_force() -> Outcome {
    for dim in 1..=3 {
        for s in super::monotone_sets(dim, 4) {
            let set = to_set(dim, &s);
            check(set.is_monotone(), || format!("{s:?} reported non-monotone"))?;
            let got: Vec<Vec<u32>> = set
                .reduced_margin()
                .unwrap()
                .iter()
                .map(|m| m.entries().to_vec())
                .collect();
            let want = super::brute_force_margin(&s, dim, 5);
            check(got == want, || {
                format!("set {s:?}: margin {got:?}, brute force {want:?}")
            })?;
        }
    }
    Ok(())
}

pub fn lagrange_functions_are_cardinal() -> Outcome {
    run(
        48,
        (1usize..=3, 0usize..7, any::<u64>()),
        |(dim, steps, seed)| {
            let basis = SparseGridBasis::new(random_monotone_set(dim, steps, seed)).unwrap();
            for (j, zj) in basis.points().iter().enumerate() {
                let l = basis.lagrange_values(zj.coords()).unwrap();
                for (i, v) in l.iter().enumerate() {
                    let expect = if i == j { 1.0 } else { 0.0 };
                    prop_assert!(
                        (v - expect).abs() <= 1e-10,
                        "L_{}({:?}) = {}",
                        i,
                        zj.coords(),
                        v
                    );
                }
            }
            Ok(())
        },
    )
}

pub fn lagrange_functions_sum_to_one() -> Outcome {
    let y = prop::collection::vec(-1.0f64..=1.0, 3);
    run(
        48,
        (1usize..=3, 0usize..7, any::<u64>(), y),
        |(dim, steps, seed, y)| {
            let basis = SparseGridBasis::new(random_monotone_set(dim, steps, seed)).unwrap();
            let l = basis.lagrange_values(&y[..dim]).unwrap();
            prop_assert!((l.iter().sum::<f64>() - 1.0).abs() < 1e-10);
            for (z, v) in basis.points().iter().zip(&l) {
                prop_assert!((basis.evaluate_lagrange(z, &y[..dim]).unwrap() - v).abs() < 1e-12);
            }
            Ok(())
        },
    )
}

pub fn combination_coefficients_sum_to_one() -> Outcome {
    run(
        48,
        (1usize..=3, 0usize..8, any::<u64>()),
        |(dim, steps, seed)| {
            let set = random_monotone_set(dim, steps, seed);
            prop_assert_eq!(combination_coeffs(&set).values().sum::<i64>(), 1);
            Ok(())
        },
    )
}

pub fn generated_points_partition_the_enhanced_grid() -> Outcome {
    run(
        48,
        (1usize..=3, 0usize..7, any::<u64>()),
        |(dim, steps, seed)| {
            let set = random_monotone_set(dim, steps, seed);
            let old: BTreeSet<CollocationPoint> = grid_points(&set).into_iter().collect();
            let margin = set.reduced_margin().unwrap();
            let mut seen = BTreeSet::new();
            for nu in &margin {
                for z in generated_points(&set, nu).unwrap() {
                    prop_assert!(!old.contains(&z));
                    prop_assert!(seen.insert(z), "generated twice");
                }
            }
            let mut enhanced = set.clone();
            for nu in margin {
                enhanced.insert(nu).unwrap();
            }
            let all: BTreeSet<CollocationPoint> = grid_points(&enhanced).into_iter().collect();
            let new: BTreeSet<CollocationPoint> = all.difference(&old).cloned().collect();
            prop_assert_eq!(new, seen);
            Ok(())
        },
    )
}

/// Exact Gram matrix against a seeded Monte Carlo mean, entrywise within 3σ.
pub fn gram_matrix_matches_monte_carlo(samples: usize, seed: u64) -> Outcome {
    let set = MultiIndexSet::from_indices(
        2,
        [[1, 1], [2, 1], [1, 2], [3, 1], [2, 2], [1, 3]]
            .map(|e| MultiIndex::new(e.to_vec()).unwrap()),
    )
    .unwrap();
    let basis = SparseGridBasis::new(set).unwrap();
    let g = basis.gram();
    let n = basis.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sum = vec![0.0; n * n];
    let mut sum2 = vec![0.0; n * n];
    for _ in 0..samples {
        let y = [rng.gen_range(-1.0..=1.0), rng.gen_range(-1.0..=1.0)];
        let l = basis.lagrange_values(&y).unwrap();
        for i in 0..n {
            for j in 0..n {
                let v = l[i] * l[j];
                sum[i * n + j] += v;
                sum2[i * n + j] += v * v;
            }
        }
    }
    let ns = samples as f64;
    for i in 0..n {
        for j in 0..n {
            let mean = sum[i * n + j] / ns;
            let var = (sum2[i * n + j] / ns - mean * mean).max(0.0);
            let sigma = (var / ns).sqrt();
            check((g.get(i, j) - mean).abs() <= 3.0 * sigma + 1e-12, || {
                format!("G[{i}][{j}] = {} vs MC {mean} ± {sigma}", g.get(i, j))
            })?;
        }
    }
    Ok(())
}

// ---- meshes ----

pub fn base(domain: Domain, res: usize) -> Triangulation {
    Triangulation::from_coarse(Arc::new(initial_mesh(domain, res).unwrap()))
}

/// Applies refinement rounds; each round marks interior edges chosen by
/// `picks` (taken modulo the current edge count).
fn refine_by(mut t: Triangulation, rounds: &[Vec<usize>]) -> Triangulation {
    for picks in rounds {
        let n = t.num_interior_edges();
        if n == 0 {
            break;
        }
        let marked: Vec<usize> = picks
            .iter()
            .map(|p| t.interior_edge_list()[p % n] as usize)
            .collect();
        t = t.refine(&marked).unwrap();
    }
    t
}

fn rounds() -> impl Strategy<Value = Vec<Vec<usize>>> {
    prop::collection::vec(prop::collection::vec(any::<usize>(), 1..4), 0..5)
}

fn domain() -> impl Strategy<Value = Domain> {
    prop_oneof![Just(Domain::UnitSquare), Just(Domain::LShape)]
}

/// Conformity, nestedness, area and the minimum-angle bound of `T_0`.
pub fn refinement_is_conforming_and_shape_regular() -> Outcome {
    run(40, (domain(), rounds()), |(d, r)| {
        let t0 = base(d, 2);
        let bound = t0.min_angle();
        let mut prev = t0.clone();
        for round in &r {
            let next = refine_by(prev.clone(), std::slice::from_ref(round));
            prop_assert!(next.is_conforming());
            prop_assert!(next.is_refinement_of(&prev));
            prop_assert!(next.min_angle() >= bound - 1e-12);
            prop_assert!((next.area() - d.area()).abs() < 1e-12);
            prev = next;
        }
        Ok(())
    })
}

/// Commutativity, idempotence, identity `T_0`, associativity, upper bound
/// and absorption of the overlay.
pub fn overlay_lattice_laws() -> Outcome {
    run(
        40,
        (domain(), rounds(), rounds(), rounds()),
        |(d, ra, rb, rc)| {
            let t0 = base(d, 2);
            let a = refine_by(t0.clone(), &ra);
            let b = refine_by(t0.clone(), &rb);
            let c = refine_by(t0.clone(), &rc);
            let ab = overlay(&a, &b).unwrap();
            prop_assert_eq!(&ab, &overlay(&b, &a).unwrap());
            prop_assert_eq!(&overlay(&a, &a).unwrap(), &a);
            prop_assert_eq!(&overlay(&a, &t0).unwrap(), &a);
            prop_assert_eq!(
                &overlay(&ab, &c).unwrap(),
                &overlay(&a, &overlay(&b, &c).unwrap()).unwrap()
            );
            prop_assert!(ab.is_refinement_of(&a) && ab.is_refinement_of(&b));
            prop_assert!(ab.is_conforming());
            let fine = refine_by(a.clone(), &rb);
            prop_assert_eq!(&overlay(&a, &fine).unwrap(), &fine);
            Ok(())
        },
    )
}

pub fn prolongation_is_exact_for_affine_functions() -> Outcome {
    let c = prop::array::uniform3(-2.0f64..2.0);
    run(40, (domain(), rounds(), rounds(), c), |(d, r, s, c)| {
        let coarse = refine_by(base(d, 2), &r);
        let fine = refine_by(coarse.clone(), &s);
        let f = |p: [f64; 2]| c[0] + c[1] * p[0] + c[2] * p[1];
        let values: Vec<f64> = coarse.vertices().iter().map(|&p| f(p)).collect();
        let out = prolongate(&coarse, &values, &fine).unwrap();
        for (p, v) in fine.vertices().iter().zip(&out) {
            prop_assert!((f(*p) - v).abs() < 1e-12);
        }
        Ok(())
    })
}

pub fn prolongation_preserves_norms() -> Outcome {
    run(40, (rounds(), rounds()), |(r, s)| {
        let coarse = Arc::new(refine_by(base(Domain::LShape, 1), &r));
        let fine = Arc::new(refine_by((*coarse).clone(), &s));
        let u =
            FemFunction::interpolate(coarse.clone(), |p| (p[0] * 3.0).sin() * (1.0 - p[1] * p[1]));
        let v = u.prolongate(&fine).unwrap();
        prop_assert!((u.energy_norm() - v.energy_norm()).abs() < 1e-12 * (1.0 + u.energy_norm()));
        prop_assert!((u.l2_inner(&u).unwrap() - v.l2_inner(&v).unwrap()).abs() < 1e-12);
        Ok(())
    })
}

// ---- FEM ----

/// Degree-5 exactness on random triangles. Powers of affine forms span the
/// polynomials of each degree, and for a triangle with vertices `v_i`
/// `∫_T L^k = 2|T| / ((k+1)(k+2)) · Σ_{i+j+l=k} L(v1)^i L(v2)^j L(v3)^l`.
pub fn quadrature_is_exact_to_degree_five() -> Outcome {
    let tri = prop::array::uniform3(prop::array::uniform2(-3.0f64..3.0));
    let coef = prop::array::uniform3(-1.5f64..1.5);
    run(256, (tri, coef), |(v, c)| {
        let area = 0.5
            * ((v[1][0] - v[0][0]) * (v[2][1] - v[0][1])
                - (v[2][0] - v[0][0]) * (v[1][1] - v[0][1]));
        prop_assume!(area.abs() > 1e-3);
        let tri = if area > 0.0 { v } else { [v[0], v[2], v[1]] };
        let l = |p: [f64; 2]| c[0] + c[1] * p[0] + c[2] * p[1];
        let lv = tri.map(l);
        for k in 0..=5i32 {
            let mut sum = 0.0;
            for i in 0..=k {
                for j in 0..=k - i {
                    sum += lv[0].powi(i) * lv[1].powi(j) * lv[2].powi(k - i - j);
                }
            }
            let exact = 2.0 * area.abs() / f64::from((k + 1) * (k + 2)) * sum;
            let got = integrate(&tri, |p| l(p).powi(k));
            prop_assert!(
                (got - exact).abs() <= 1e-12 * (1.0 + exact.abs()),
                "k={} {} vs {}",
                k,
                got,
                exact
            );
        }
        Ok(())
    })
}

/// Energy errors of the one-peak solution at `y` on a sequence of uniform
/// refinements of `T_0`.
fn one_peak_errors(y: &[f64], levels: usize) -> Vec<f64> {
    let p = OnePeakProblem::new(8);
    let mut mesh = Arc::new(Triangulation::from_coarse(Arc::new(
        initial_mesh(p.domain(), 8).unwrap(),
    )));
    for _ in 0..2 {
        mesh = Arc::new(mesh.uniform_refine());
    }
    let mut out = Vec::new();
    for _ in 0..levels {
        let u = solve_sample(&p, &mesh, y, None, &SolverOptions::default()).unwrap();
        out.push(super::energy_error(&u, |x| {
            OnePeakProblem::exact_gradient(x, y)
        }));
        mesh = Arc::new(mesh.uniform_refine());
    }
    out
}

/// Rate of the energy error under uniform refinement is `1.0 ± 0.15` in `h`.
pub fn one_peak_energy_error_converges_at_first_order() -> Outcome {
    for y in [
        [0.0, 0.0],
        [0.7, -0.3],
        [-0.9, 0.5],
        [0.2, 0.9],
        [-0.4, -0.8],
    ] {
        let e = one_peak_errors(&y, 4);
        let rate = (e[2] / e[3]).log2();
        check((rate - 1.0).abs() <= 0.15, || {
            format!("y = {y:?}: errors {e:?}, rate {rate}")
        })?;
    }
    Ok(())
}

// ---- problems ----

pub fn kl_1d_eigenvalues_match_nystrom() -> Outcome {
    let modes = kl_eigenpairs_1d(4, 1.0, 1.0).unwrap();
    let oracle = super::nystrom_eigenvalues_1d(500, 4);
    for (m, o) in modes.iter().zip(&oracle) {
        check((m.lambda - o).abs() < 1e-6, || {
            format!("{} vs {}", m.lambda, o)
        })?;
    }
    Ok(())
}

pub fn kl_2d_eigenvalues_match_nystrom() -> Outcome {
    let kl = kl_eigenpairs_2d(4, 1.5).unwrap();
    let oracle = super::nystrom_eigenvalues_2d(60, 1.5, 4);
    for (l, o) in kl.eigenvalues().iter().zip(&oracle) {
        check((l - o).abs() < 1e-5, || format!("{l} vs {o}"))?;
    }
    Ok(())
}
