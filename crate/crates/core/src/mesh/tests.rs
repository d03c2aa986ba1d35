use alloc::sync::Arc;
use alloc::vec::Vec;

use super::*;

fn square(n: usize) -> Triangulation {
    Triangulation::from_coarse(Arc::new(initial_mesh(Domain::UnitSquare, n).unwrap()))
}

fn edge_at(t: &Triangulation, p: [f64; 2]) -> usize {
    (0..t.num_edges())
        .find(|&e| t.edge_midpoint(e) == p)
        .unwrap()
}

#[test]
fn uniform_refinement_counts() {
    let t = square(1);
    assert_eq!((t.num_vertices(), t.num_elements()), (4, 2));
    let u = t.uniform_refine();
    assert_eq!((u.num_vertices(), u.num_elements()), (9, 8));
    assert!(u.is_conforming());
    assert!(u.is_refinement_of(&t));
    assert!(!t.is_refinement_of(&u));
    let u2 = u.uniform_refine();
    assert_eq!((u2.num_vertices(), u2.num_elements()), (25, 32));
    assert!((u2.area() - 1.0).abs() < 1e-14);
}

#[test]
fn single_edge_refinement_with_closure() {
    let t = square(2);
    let e = edge_at(&t, [0.5, 0.25]);
    let r = t.refine(&[e]).unwrap();
    assert!(r.is_conforming());
    assert!(r.vertex_index(&[0.5, 0.25]).is_some());
    assert!(r.num_elements() > t.num_elements());
    assert!((r.min_angle() - core::f64::consts::FRAC_PI_4).abs() < 1e-12);
}

#[test]
fn boundary_edges_cannot_be_marked() {
    let t = square(2);
    let e = (0..t.num_edges()).find(|&e| t.is_boundary_edge(e)).unwrap();
    assert!(t.refine(&[e]).is_err());
}

#[test]
fn empty_marking_is_identity() {
    let t = square(3);
    assert_eq!(t.refine(&[]).unwrap(), t);
}

#[test]
fn replay_from_leaves() {
    let t = square(2).uniform_refine();
    let e = edge_at(&t, [0.25, 0.125]);
    let r = t.refine(&[e]).unwrap();
    let back = Triangulation::from_leaves(r.coarse().clone(), r.element_ids()).unwrap();
    assert_eq!(back, r);
    assert_eq!(back.elements(), r.elements());
    for v in 0..r.num_vertices() {
        assert_eq!(back.vertex_parents(v), r.vertex_parents(v));
        assert_eq!(back.vertex_generation(v), r.vertex_generation(v));
    }
}

#[test]
fn overlay_is_common_refinement() {
    let t = square(2);
    let a = t.refine(&[edge_at(&t, [0.25, 0.25])]).unwrap();
    let b = t.refine(&[edge_at(&t, [0.75, 0.75])]).unwrap();
    let o = overlay(&a, &b).unwrap();
    assert!(o.is_conforming());
    assert!(o.is_refinement_of(&a) && o.is_refinement_of(&b));
    assert_eq!(overlay(&a, &a).unwrap(), a);
    assert_eq!(overlay(&t, &a).unwrap(), a);
    assert_eq!(overlay_all(&[&a, &b, &t]).unwrap(), o);
}

#[test]
fn prolongation_reproduces_linear_functions() {
    let t = square(2);
    let f = |p: &[f64; 2]| 3.0 * p[0] - 2.0 * p[1] + 0.5;
    let vals: Vec<f64> = t.vertices().iter().map(f).collect();
    let u = t.uniform_refine();
    let fine = u.refine(&[edge_at(&u, [0.375, 0.375])]).unwrap();
    let out = prolongate(&t, &vals, &fine).unwrap();
    for (v, p) in fine.vertices().iter().enumerate() {
        assert!((out[v] - f(p)).abs() < 1e-14);
    }
    assert!(prolongate(&fine, &out, &t).is_err());
}

#[test]
fn interior_midpoints_match_edges() {
    let t = square(2);
    let n = t.interior_midpoints();
    let interior = (0..t.num_edges())
        .filter(|&e| !t.is_boundary_edge(e))
        .count();
    assert_eq!(n.len(), interior);
    for (k, ie) in n.entries.iter().enumerate() {
        assert_eq!(t.interior_ordinal(ie.edge), Some(k));
    }
}

#[test]
fn l_shape_refines_conformingly() {
    let t = Triangulation::from_coarse(Arc::new(initial_mesh(Domain::LShape, 2).unwrap()));
    let r = t.uniform_refine();
    assert!(r.is_conforming());
    assert!((r.area() - 3.0).abs() < 1e-13);
}
