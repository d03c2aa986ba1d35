use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
#[allow(unused_imports)] // std, when linked, supplies these as inherent methods
use num_traits::Float;

use super::p1_gradients;
use crate::mesh::{prolongate, signed_area2, Triangulation};
use crate::{Error, Result};

/// Nodal values of a continuous piecewise-linear function on a mesh.
#[derive(Clone, Debug, PartialEq)]
pub struct FemFunction {
    mesh: Arc<Triangulation>,
    coeffs: Vec<f64>,
}

impl FemFunction {
    pub fn new(mesh: Arc<Triangulation>, coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.len() != mesh.num_vertices() {
            return Err(Error::DimensionMismatch {
                expected: mesh.num_vertices(),
                got: coeffs.len(),
            });
        }
        Ok(FemFunction { mesh, coeffs })
    }

    pub fn zeros(mesh: Arc<Triangulation>) -> Self {
        let n = mesh.num_vertices();
        FemFunction {
            mesh,
            coeffs: vec![0.0; n],
        }
    }

    /// Nodal interpolant of `g`.
    pub fn interpolate(mesh: Arc<Triangulation>, g: impl Fn([f64; 2]) -> f64) -> Self {
        let coeffs = mesh.vertices().iter().map(|&p| g(p)).collect();
        FemFunction { mesh, coeffs }
    }

    pub fn mesh(&self) -> &Arc<Triangulation> {
        &self.mesh
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<f64> {
        self.coeffs
    }

    fn check_same_mesh(&self, other: &FemFunction) -> Result<()> {
        if Arc::ptr_eq(&self.mesh, &other.mesh) || *self.mesh == *other.mesh {
            Ok(())
        } else {
            Err(Error::IncompatibleMesh(
                "functions live on different meshes",
            ))
        }
    }

    /// `(∇v, ∇w)_{L²}`.
    pub fn energy_inner(&self, other: &FemFunction) -> Result<f64> {
        self.check_same_mesh(other)?;
        Ok(energy_inner_on(&self.mesh, &self.coeffs, &other.coeffs))
    }

    /// `‖∇v‖_{L²}`.
    pub fn energy_norm(&self) -> f64 {
        energy_inner_on(&self.mesh, &self.coeffs, &self.coeffs)
            .max(0.0)
            .sqrt()
    }

    /// `(v, w)_{L²}`, exact for P1 functions.
    pub fn l2_inner(&self, other: &FemFunction) -> Result<f64> {
        self.check_same_mesh(other)?;
        Ok(l2_inner_on(&self.mesh, &self.coeffs, &other.coeffs))
    }

    /// The same function on a refinement of its mesh.
    pub fn prolongate(&self, target: &Arc<Triangulation>) -> Result<FemFunction> {
        if Arc::ptr_eq(&self.mesh, target) {
            return Ok(self.clone());
        }
        FemFunction::new(
            target.clone(),
            prolongate(&self.mesh, &self.coeffs, target)?,
        )
    }

    /// `self − other` on a shared mesh.
    pub fn sub(&self, other: &FemFunction) -> Result<FemFunction> {
        self.check_same_mesh(other)?;
        Ok(FemFunction {
            mesh: self.mesh.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }
}

pub(crate) fn energy_inner_on(mesh: &Triangulation, v: &[f64], w: &[f64]) -> f64 {
    let mut s = 0.0;
    for (e, t) in mesh.elements().iter().enumerate() {
        let (g, area) = p1_gradients(&mesh.element_coords(e));
        let mut gv = [0.0; 2];
        let mut gw = [0.0; 2];
        for i in 0..3 {
            let (vi, wi) = (v[t[i] as usize], w[t[i] as usize]);
            gv[0] += vi * g[i][0];
            gv[1] += vi * g[i][1];
            gw[0] += wi * g[i][0];
            gw[1] += wi * g[i][1];
        }
        s += area * (gv[0] * gw[0] + gv[1] * gw[1]);
    }
    s
}

pub(crate) fn l2_inner_on(mesh: &Triangulation, v: &[f64], w: &[f64]) -> f64 {
    let mut s = 0.0;
    for (e, t) in mesh.elements().iter().enumerate() {
        let [a, b, c] = mesh.element_coords(e);
        let area = 0.5 * signed_area2(a, b, c);
        let vv = t.map(|i| v[i as usize]);
        let ww = t.map(|i| w[i as usize]);
        let mut loc = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                loc += vv[i] * ww[j] * if i == j { 2.0 } else { 1.0 };
            }
        }
        s += area / 12.0 * loc;
    }
    s
}
