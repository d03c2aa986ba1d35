use alloc::vec::Vec;
use core::cmp::Ordering;
#[allow(unused_imports)] // std, when linked, supplies these as inherent methods
use num_traits::Float;

use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    /// `cos(ωx)`.
    Even,
    /// `sin(ωx)`.
    Odd,
}

/// Eigenpair of `v ↦ ∫_{−L}^{L} exp(−|x−x′|/ℓ) v(x′) dx′`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KlMode1d {
    pub omega: f64,
    pub lambda: f64,
    pub parity: Parity,
    /// L²(−L, L) normalisation factor.
    pub scale: f64,
}

impl KlMode1d {
    pub fn eval(&self, x: f64) -> f64 {
        match self.parity {
            Parity::Even => self.scale * (self.omega * x).cos(),
            Parity::Odd => self.scale * (self.omega * x).sin(),
        }
    }
}

fn bisect_root(g: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> Result<f64> {
    let (mut glo, ghi) = (g(lo), g(hi));
    if glo == 0.0 {
        return Ok(lo);
    }
    if ghi == 0.0 {
        return Ok(hi);
    }
    if glo.signum() == ghi.signum() {
        return Err(Error::RootFinding { lo, hi });
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let gm = g(mid);
        if gm == 0.0 {
            return Ok(mid);
        }
        if gm.signum() == glo.signum() {
            lo = mid;
            glo = gm;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// The `n` largest eigenpairs of the exponential kernel with correlation
/// length `corr_len` on `[−half_width, half_width]`, by decreasing `λ`.
///
/// With `c = 1/ℓ` and `w = ωL`, even modes solve `cL·cos w − w·sin w = 0`
/// on `(kπ, kπ + π/2)` and odd modes `w·cos w + cL·sin w = 0` on
/// `(kπ + π/2, (k+1)π)`; `λ = 2c/(ω² + c²)`. The branches interlace, so
/// alternating them yields decreasing eigenvalues.
pub fn kl_eigenpairs_1d(n: usize, half_width: f64, corr_len: f64) -> Result<Vec<KlMode1d>> {
    if n == 0 || !(half_width > 0.0) || !(corr_len > 0.0) {
        return Err(Error::contract(
            "KL expansion needs n ≥ 1 and positive lengths",
        ));
    }
    let pi = core::f64::consts::PI;
    let c = 1.0 / corr_len;
    let cl = c * half_width;
    let mut out = Vec::with_capacity(n);
    for idx in 0..n {
        let k = (idx / 2) as f64;
        let (parity, w) = if idx % 2 == 0 {
            let g = |w: f64| cl * w.cos() - w * w.sin();
            (Parity::Even, bisect_root(g, k * pi, k * pi + 0.5 * pi)?)
        } else {
            let g = |w: f64| w * w.cos() + cl * w.sin();
            (
                Parity::Odd,
                bisect_root(g, k * pi + 0.5 * pi, (k + 1.0) * pi)?,
            )
        };
        let omega = w / half_width;
        let s = (2.0 * w).sin() / (2.0 * w);
        let norm2 = match parity {
            Parity::Even => half_width * (1.0 + s),
            Parity::Odd => half_width * (1.0 - s),
        };
        out.push(KlMode1d {
            omega,
            lambda: 2.0 * c / (omega * omega + c * c),
            parity,
            scale: 1.0 / norm2.sqrt(),
        });
    }
    Ok(out)
}

/// A separable 2D mode `σ²λᵢλⱼ`, `φᵢ(x₁)φⱼ(x₂)` (indices into the 1D list).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KlMode2d {
    pub lambda: f64,
    pub i: usize,
    pub j: usize,
}

/// Truncated expansion of the covariance `σ² exp(−|x₁−x₁′| − |x₂−x₂′|)`
/// on `(−1, 1)²`.
#[derive(Clone, Debug, PartialEq)]
pub struct KlExpansion {
    pub sigma: f64,
    pub one_d: Vec<KlMode1d>,
    pub modes: Vec<KlMode2d>,
}

impl KlExpansion {
    pub fn eigenvalues(&self) -> Vec<f64> {
        self.modes.iter().map(|m| m.lambda).collect()
    }

    /// `φ_m(x)` for mode `m` (0-based).
    pub fn eigenfunction(&self, m: usize, x: [f64; 2]) -> f64 {
        let md = &self.modes[m];
        self.one_d[md.i].eval(x[0]) * self.one_d[md.j].eval(x[1])
    }

    /// `Σ_m √λ_m φ_m(x) y_m`.
    pub fn field(&self, x: [f64; 2], y: &[f64]) -> f64 {
        self.modes
            .iter()
            .zip(y)
            .map(|(md, ym)| {
                md.lambda.sqrt() * self.one_d[md.i].eval(x[0]) * self.one_d[md.j].eval(x[1]) * ym
            })
            .sum()
    }

    /// Upper bound for `|Σ_m √λ_m φ_m(x) y_m|` over `x` and `y ∈ [−1,1]^M`.
    pub fn field_bound(&self) -> f64 {
        self.modes
            .iter()
            .map(|md| md.lambda.sqrt() * self.one_d[md.i].scale * self.one_d[md.j].scale)
            .sum()
    }
}

/// The `n` leading 2D modes, ties in `λ` ordered by `(i, j)`.
pub fn kl_eigenpairs_2d(n: usize, sigma: f64) -> Result<KlExpansion> {
    let one_d = kl_eigenpairs_1d(n, 1.0, 1.0)?;
    let mut modes = Vec::with_capacity(n * n);
    for (i, a) in one_d.iter().enumerate() {
        for (j, b) in one_d.iter().enumerate() {
            modes.push(KlMode2d {
                lambda: sigma * sigma * a.lambda * b.lambda,
                i,
                j,
            });
        }
    }
    // λᵢλⱼ = λⱼλᵢ must compare equal bit for bit, so compare the sorted
    // factor pairs rather than the rounded products.
    let key = |m: &KlMode2d| {
        let (p, q) = (m.i.min(m.j), m.i.max(m.j));
        (one_d[p].lambda * one_d[q].lambda, m.i, m.j)
    };
    modes.sort_by(|x, y| {
        let (kx, ky) = (key(x), key(y));
        ky.0.partial_cmp(&kx.0)
            .unwrap_or(Ordering::Equal)
            .then((kx.1, kx.2).cmp(&(ky.1, ky.2)))
    });
    modes.truncate(n);
    for m in &mut modes {
        let (p, q) = (m.i.min(m.j), m.i.max(m.j));
        m.lambda = sigma * sigma * one_d[p].lambda * one_d[q].lambda;
    }
    Ok(KlExpansion {
        sigma,
        one_d,
        modes,
    })
}
