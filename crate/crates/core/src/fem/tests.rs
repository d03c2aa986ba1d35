use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
#[allow(unused_imports)] // std, when linked, supplies these as inherent methods
use num_traits::Float;

use super::*;
use crate::mesh::{initial_mesh, CoarseMesh, Domain, Triangulation};

fn square(n: usize) -> Arc<Triangulation> {
    Arc::new(Triangulation::from_coarse(Arc::new(
        initial_mesh(Domain::UnitSquare, n).unwrap(),
    )))
}

fn reference_triangle() -> Arc<Triangulation> {
    let coarse = CoarseMesh::new(
        Domain::UnitSquare,
        1,
        vec![[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]],
        vec![[0, 1, 2]],
    )
    .unwrap();
    Arc::new(Triangulation::from_coarse(Arc::new(coarse)))
}

#[test]
fn reference_element_matrices() {
    let t = reference_triangle();
    let k = assemble_stiffness(&t, |_| 1.0).unwrap();
    let m = assemble_mass(&t);
    // vertex order may be rotated by the longest-edge rule; compare by position
    let idx = |p: [f64; 2]| t.vertex_index(&p).unwrap();
    let (o, x, y) = (idx([0.0, 0.0]), idx([1.0, 0.0]), idx([0.0, 1.0]));
    let expect_k = [[1.0, -0.5, -0.5], [-0.5, 0.5, 0.0], [-0.5, 0.0, 0.5]];
    let expect_m = [[2.0, 1.0, 1.0], [1.0, 2.0, 1.0], [1.0, 1.0, 2.0]];
    let ids = [o, x, y];
    for i in 0..3 {
        for j in 0..3 {
            assert!((k.get(ids[i], ids[j]) - expect_k[i][j]).abs() < 1e-15);
            assert!((m.get(ids[i], ids[j]) - expect_m[i][j] / 24.0).abs() < 1e-16);
        }
    }
}

#[test]
fn stiffness_structure() {
    let t = square(4).uniform_refine();
    let t = Arc::new(t);
    let k1 = assemble_stiffness(&t, |_| 1.0).unwrap();
    let k2 = assemble_stiffness(&t, |_| 2.0).unwrap();
    assert_eq!(k1.asymmetry(), 0.0);
    assert_eq!(k2, k1.scaled(2.0));
    for i in 0..t.num_vertices() {
        let s: f64 = k1.row(i).map(|(_, v)| v).sum();
        assert!(s.abs() < 1e-12);
    }
    let bad = assemble_stiffness(&t, |x| x[0] - 0.5);
    assert!(matches!(bad, Err(crate::Error::CoercivityViolation { .. })));
}

#[test]
fn mass_sums_to_area() {
    let t = Triangulation::from_coarse(Arc::new(initial_mesh(Domain::LShape, 2).unwrap()));
    assert!((assemble_mass(&t).sum() - 3.0).abs() < 1e-13);
}

#[test]
fn load_with_constant_source() {
    let t = square(3);
    let b = assemble_load(&t, |_| 1.0);
    let mut expect = vec![0.0; t.num_vertices()];
    for (e, tri) in t.elements().iter().enumerate() {
        let (_, area) = p1_gradients(&t.element_coords(e));
        for &v in tri {
            expect[v as usize] += area / 3.0;
        }
    }
    for (x, y) in b.iter().zip(&expect) {
        assert!((x - y).abs() < 1e-15);
    }
    assert!(assemble_load(&t, |_| 0.0).iter().all(|&v| v == 0.0));
}

#[test]
fn quadrature_exact_to_degree_five() {
    let t = Triangulation::from_coarse(Arc::new(initial_mesh(Domain::UnitSquare, 3).unwrap()));
    for p in 0..=5u32 {
        for q in 0..=(5 - p) {
            let b = assemble_load(&t, |x| x[0].powi(p as i32) * x[1].powi(q as i32));
            let exact = 1.0 / ((p + 1) * (q + 1)) as f64;
            assert!((b.iter().sum::<f64>() - exact).abs() < 1e-12, "x^{p} y^{q}");
        }
    }
}

/// `u(1/2, 1/2)` for `−Δu = 1` on the unit square by its sine series.
fn poisson_center_value() -> f64 {
    let pi = core::f64::consts::PI;
    let mut s = 0.0;
    for m in (1..400).step_by(2) {
        for n in (1..400).step_by(2) {
            let sign = if ((m + n) / 2) % 2 == 1 { 1.0 } else { -1.0 };
            let (m, n) = (m as f64, n as f64);
            s += sign * 16.0 / (pi.powi(4) * m * n * (m * m + n * n));
        }
    }
    s
}

#[test]
fn poisson_center_value_matches_series() {
    let oracle = poisson_center_value();
    assert!((oracle - 0.07367).abs() < 1e-5);
    let t = square(32);
    let sys = SparseSystem::assemble(&t, |_| 1.0, |_| 1.0).unwrap();
    let u = solve(&sys, 1e-10).unwrap();
    let c = t.vertex_index(&[0.5, 0.5]).unwrap();
    assert!((u.coeffs()[c] - oracle).abs() < 2e-4);
    // Galerkin orthogonality on free dofs
    let r: Vec<f64> = sys
        .matrix()
        .mul_vec(u.coeffs())
        .iter()
        .zip(sys.rhs())
        .map(|(a, b)| b - a)
        .collect();
    let bn = sys
        .free_dofs()
        .iter()
        .map(|&i| sys.rhs()[i].powi(2))
        .sum::<f64>()
        .sqrt();
    let rn = sys
        .free_dofs()
        .iter()
        .map(|&i| r[i].powi(2))
        .sum::<f64>()
        .sqrt();
    assert!(rn <= 1e-10 * bn);
    assert!(t
        .boundary_vertices()
        .iter()
        .zip(u.coeffs())
        .all(|(&b, &v)| !b || v == 0.0));
}

#[test]
fn zero_rhs_gives_zero() {
    let t = square(4);
    let sys = SparseSystem::assemble(&t, |_| 1.0, |_| 0.0).unwrap();
    assert!(solve(&sys, 1e-10)
        .unwrap()
        .coeffs()
        .iter()
        .all(|&v| v == 0.0));
}

#[test]
fn warm_start_reduces_iterations() {
    let t = square(16);
    let sys = SparseSystem::assemble(&t, |x| 1.0 + x[0], |_| 1.0).unwrap();
    let opts = SolverOptions::default();
    let (u, cold) = solve_with(&sys, &opts, None).unwrap();
    let (_, warm) = solve_with(&sys, &opts, Some(u.coeffs())).unwrap();
    assert!(warm.iterations < cold.iterations);
    let capped = SolverOptions {
        max_iterations: Some(2),
        ..opts
    };
    assert!(matches!(
        solve_with(&sys, &capped, None),
        Err(crate::Error::SolverFailure { .. })
    ));
}

#[test]
fn energy_norms() {
    let t = square(5);
    let x1 = FemFunction::interpolate(t.clone(), |p| p[0]);
    assert!((x1.energy_norm() - 1.0).abs() < 1e-13);
    let k = assemble_stiffness(&t, |_| 1.0).unwrap();
    assert!((k.bilinear(x1.coeffs(), x1.coeffs()) - 1.0).abs() < 1e-13);
    assert_eq!(FemFunction::zeros(t.clone()).energy_norm(), 0.0);
    let fine = Arc::new(t.uniform_refine());
    let g = FemFunction::interpolate(t.clone(), |p| p[0] * p[1] * (1.0 - p[0]));
    let gf = g.prolongate(&fine).unwrap();
    assert!((gf.energy_norm() - g.energy_norm()).abs() < 1e-12);
    assert!((gf.l2_inner(&gf).unwrap() - g.l2_inner(&g).unwrap()).abs() < 1e-14);
    assert!(g.energy_inner(&gf).is_err());
}
