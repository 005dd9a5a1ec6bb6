//! Adjoints of `x_j` and `∂_{x_j}` in `H_Φ` (`h = 1`) and the basis dual to
//! the monomials.
//!
//! With `P = Φ″_x̄x`, `S = Φ″_xx`:
//! `x* = P̄⁻¹(½∂ − Sx)` and `∂* = 2(P − S̄P̄⁻¹S)x + S̄P̄⁻¹∂`.
//! Writing `φ = g e^{(x, Sx)}`, the operator `∂*` acts on `g` as
//! `D = 2Px + S̄P̄⁻¹∂`, so `φ†_α = C₀ (α!)⁻¹ D^α(1) e^{(x,Sx)}` with
//! `C₀ = (2/π)^n det P`.

use num_complex::Complex64;
use serde::Serialize;

use super::QuadraticWeight;
use crate::error::Result;
use crate::matcore::{self, c64, CMatrix};
use crate::multiindex::{self, MultiIndex};
use crate::poly::Poly;

/// `x*_j = Σ_k (x_x)_{jk} x_k + (x_d)_{jk} ∂_k`, likewise for `∂*`.
#[derive(Debug, Clone, Serialize)]
pub struct AdjointSymbols {
    #[serde(with = "crate::io::cmat")]
    pub x_star_x: CMatrix,
    #[serde(with = "crate::io::cmat")]
    pub x_star_d: CMatrix,
    #[serde(with = "crate::io::cmat")]
    pub d_star_x: CMatrix,
    #[serde(with = "crate::io::cmat")]
    pub d_star_d: CMatrix,
}

pub fn adjoint_symbols(phi: &QuadraticWeight) -> Result<AdjointSymbols> {
    let pbar_inv = matcore::inverse(&phi.pxbx.map(|z| z.conj()))?;
    let s = &phi.pxx;
    let sbar = s.map(|z| z.conj());
    Ok(AdjointSymbols {
        x_star_x: -(&pbar_inv * s),
        x_star_d: pbar_inv.scale(0.5),
        d_star_x: (&phi.pxbx - &sbar * &pbar_inv * s).scale(2.0),
        d_star_d: &sbar * &pbar_inv,
    })
}

impl AdjointSymbols {
    /// Applies `Σ_k a_{jk} x_k + b_{jk} ∂_k` to a polynomial.
    pub fn apply(a: &CMatrix, b: &CMatrix, j: usize, p: &Poly) -> Poly {
        let mut out = Poly::zero(p.n);
        for k in 0..p.n {
            if a[(j, k)] != c64(0.0, 0.0) {
                out = out.add(&p.times_x(k).scale(a[(j, k)]));
            }
            if b[(j, k)] != c64(0.0, 0.0) {
                out = out.add(&p.d(k).scale(b[(j, k)]));
            }
        }
        out
    }
}

/// `φ†_α = c0 · poly(x) · e^{(x, Sx)}`.
#[derive(Debug, Clone)]
pub struct DualBasisVector {
    pub alpha: MultiIndex,
    pub poly: Poly,
    pub c0: f64,
    pub s: CMatrix,
}

impl DualBasisVector {
    pub fn evaluate(&self, x: &[Complex64]) -> Complex64 {
        let mut q = c64(0.0, 0.0);
        for i in 0..x.len() {
            for j in 0..x.len() {
                q += x[i] * self.s[(i, j)] * x[j];
            }
        }
        self.poly.evaluate(x) * self.c0 * q.exp()
    }
}

pub fn dual_basis(phi: &QuadraticWeight, alpha: &[u32]) -> Result<DualBasisVector> {
    let n = phi.n;
    let pbar_inv = matcore::inverse(&phi.pxbx.map(|z| z.conj()))?;
    let dx = phi.pxbx.scale(2.0);
    let dd = phi.pxx.map(|z| z.conj()) * pbar_inv;
    let mut p = Poly::one(n);
    for (j, &aj) in alpha.iter().enumerate() {
        for _ in 0..aj {
            p = AdjointSymbols::apply(&dx, &dd, j, &p);
        }
    }
    let p = p.scale(c64(1.0 / multiindex::alpha_factorial(alpha), 0.0));
    let c0 = (2.0 / std::f64::consts::PI).powi(n as i32) * phi.pxbx.determinant().re;
    Ok(DualBasisVector { alpha: alpha.to_vec(), poly: p, c0, s: phi.pxx.clone() })
}

/// `max |⟨x^β, φ†_α⟩ − δ_{αβ}|` over `|α|, |β| ≤ d`, by an `m`-point tensor
/// Gauss–Hermite rule for `e^{−Φ − (Φ″_x̄x x, x̄)}`; the rest of `e^{−2Φ}`
/// cancels the growth of `φ†_α` up to a phase.
pub fn biorthogonality_defect(phi: &QuadraticWeight, d: u32, m: usize) -> Result<f64> {
    let herm = phi.split().0;
    let rule = super::GaussHermite::new(&(phi.real_hessian() + herm.real_hessian()), m)?;
    let basis = multiindex::graded(phi.n, d);
    let duals = basis.iter().map(|a| dual_basis(phi, a)).collect::<Result<Vec<_>>>()?;
    let k = basis.len();
    let mut acc = vec![c64(0.0, 0.0); k * k];
    let (mut xb, mut dc) = (vec![c64(0.0, 0.0); k], vec![c64(0.0, 0.0); k]);
    rule.for_each(|x, wt| {
        let w = (herm.evaluate(x) - phi.evaluate(x)).exp() * wt;
        for (j, beta) in basis.iter().enumerate() {
            xb[j] = x.iter().zip(beta).map(|(z, &p)| z.powu(p)).product::<Complex64>() * w;
        }
        for (i, dual) in duals.iter().enumerate() {
            dc[i] = dual.evaluate(x).conj();
        }
        for i in 0..k {
            for j in 0..k {
                acc[i * k + j] += xb[j] * dc[i];
            }
        }
    });
    let mut worst: f64 = 0.0;
    for i in 0..k {
        for j in 0..k {
            let want = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((acc[i * k + j] - c64(want, 0.0)).norm());
        }
    }
    Ok(worst)
}
