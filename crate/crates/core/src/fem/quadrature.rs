//! Symmetric 7-point rule on triangles, exact for polynomials of degree 5.

#[allow(unused_imports)] // std, when linked, supplies these as inherent methods
use num_traits::Float;

/// Barycentric coordinates and weights (weights sum to 1; multiply by the
/// triangle area).
pub fn triangle_rule() -> [([f64; 3], f64); 7] {
    let s = 15.0f64.sqrt();
    let a1 = (6.0 - s) / 21.0;
    let b1 = 1.0 - 2.0 * a1;
    let w1 = (155.0 - s) / 1200.0;
    let a2 = (6.0 + s) / 21.0;
    let b2 = 1.0 - 2.0 * a2;
    let w2 = (155.0 + s) / 1200.0;
    let t = 1.0 / 3.0;
    [
        ([t, t, t], 9.0 / 40.0),
        ([b1, a1, a1], w1),
        ([a1, b1, a1], w1),
        ([a1, a1, b1], w1),
        ([b2, a2, a2], w2),
        ([a2, b2, a2], w2),
        ([a2, a2, b2], w2),
    ]
}

/// Cartesian point for barycentric coordinates `l` on triangle `p`.
pub fn map_point(p: &[[f64; 2]; 3], l: &[f64; 3]) -> [f64; 2] {
    [
        l[0] * p[0][0] + l[1] * p[1][0] + l[2] * p[2][0],
        l[0] * p[0][1] + l[1] * p[1][1] + l[2] * p[2][1],
    ]
}

/// `∫_T g` with the 7-point rule.
pub fn integrate(p: &[[f64; 2]; 3], g: impl Fn([f64; 2]) -> f64) -> f64 {
    let area = 0.5 * crate::mesh::signed_area2(p[0], p[1], p[2]);
    triangle_rule()
        .iter()
        .map(|(l, w)| w * g(map_point(p, l)))
        .sum::<f64>()
        * area
}
