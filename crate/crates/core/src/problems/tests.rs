#[allow(unused_imports)] // std, when linked, supplies these as inherent methods
use num_traits::Float;

use super::*;
use crate::sparse_grid::gauss_legendre::gauss_legendre;

#[test]
fn fourier_mode_ordering() {
    assert_eq!(fourier_order(1), (1, 0, 1));
    assert_eq!(fourier_order(2), (1, 1, 0));
    assert_eq!(fourier_order(3), (2, 0, 2));
    assert_eq!(fourier_order(6), (3, 0, 3));
    for m in 1..200usize {
        let k = (-0.5 + (0.25 + 2.0 * m as f64).sqrt()).floor() as usize;
        assert_eq!(fourier_order(m).0, k);
    }
}

#[test]
fn fourier_coefficient() {
    let p = FourierProblem::standard();
    assert_eq!(p.alphas()[0], 0.547);
    assert!((p.alphas()[1] - 0.13675).abs() < 1e-15);
    assert_eq!(p.coefficient([0.3, 0.7], &[0.0; 4]), 1.0);
    let (lo, hi) = p.coefficient_bounds().unwrap();
    assert!(lo > 0.0 && hi < 2.0);
}

#[test]
fn kl_leading_pair() {
    let modes = kl_eigenpairs_1d(8, 1.0, 1.0).unwrap();
    assert!((modes[0].omega - 0.86033).abs() < 1e-5);
    assert!((modes[0].lambda - 1.14931).abs() < 1e-5);
    assert!(modes.windows(2).all(|w| w[0].lambda > w[1].lambda));
    let (x, w) = gauss_legendre(200);
    for a in &modes {
        for b in &modes {
            let ip: f64 = x
                .iter()
                .zip(&w)
                .map(|(&x, &w)| w * a.eval(x) * b.eval(x))
                .sum();
            let expect = if a == b { 1.0 } else { 0.0 };
            assert!((ip - expect).abs() < 1e-8);
        }
    }
}

#[test]
fn kl_two_dimensional() {
    let kl = kl_eigenpairs_2d(4, 1.5).unwrap();
    let l1 = kl.one_d[0].lambda;
    assert_eq!(kl.modes[0].lambda, 2.25 * l1 * l1);
    // the two mixed modes of equal eigenvalue keep (i, j) order
    assert_eq!((kl.modes[1].i, kl.modes[1].j), (0, 1));
    assert_eq!((kl.modes[2].i, kl.modes[2].j), (1, 0));
    assert_eq!(kl.modes[1].lambda, kl.modes[2].lambda);
    let p = ExpKlProblem::standard();
    assert!((p.coefficient([0.5, -0.5], &[0.0; 4]) - core::f64::consts::E).abs() < 1e-15);
}

#[test]
fn one_peak_data() {
    let p = OnePeakProblem::standard();
    let y = [0.3, -0.6];
    assert_eq!(p.exact_solution([0.3, -0.6], &y), Some(1.0));
    assert_eq!(OnePeakProblem::alpha(-1.0), 1.0);
    assert_eq!(OnePeakProblem::alpha(1.0), 10.0);
    assert!((one_peak_reference_qoi() - 0.015095545).abs() < 1e-9);
    let h = 1e-4;
    for x in [[0.1, -0.4], [0.7, -0.2], [0.35, -0.65]] {
        let u = |x: [f64; 2]| OnePeakProblem::exact(x, &y);
        let lap =
            (u([x[0] + h, x[1]]) + u([x[0] - h, x[1]]) + u([x[0], x[1] + h]) + u([x[0], x[1] - h])
                - 4.0 * u(x))
                / (h * h);
        assert!((lap + p.rhs(x, &y)).abs() < 1e-4 * (1.0 + p.rhs(x, &y).abs()));
    }
    let g = OnePeakProblem::exact_gradient([0.5, 0.1], &y);
    let fd = (OnePeakProblem::exact([0.5 + h, 0.1], &y)
        - OnePeakProblem::exact([0.5 - h, 0.1], &y))
        / (2.0 * h);
    assert!((g[0] - fd).abs() < 1e-6);
}
