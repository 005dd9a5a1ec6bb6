//! Quadratic weights `Φ` on `C^n`, the spaces `H_Φ` they define (at `h = 1`),
//! monomial norms, Gram matrices, dual weights and dual bases.
//!
//! `Φ(x) = (Φ″_x̄x x, x̄) + Re(Φ″_xx x, x)`; the Hermitian matrix `Φ″_x̄x` is
//! stored as `pxbx` and the complex symmetric `Φ″_xx` as `pxx`.

mod dual;
mod gaussian;
mod sphere;

pub use dual::{adjoint_symbols, biorthogonality_defect, dual_basis, AdjointSymbols, DualBasisVector};
pub use gaussian::{gauss_hermite_inner, GaussHermite, MomentTable};
pub use sphere::{SphereQuadrature, QUAD_REL_TOL};

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matcore::{self, c64, fro, hermitian_residual, identity, symmetric_residual, CMatrix, Tolerance};
use crate::multiindex::{self, ln_factorial, MultiIndex};
use crate::normalform::{gc_from_weight, weight_from_gc};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuadraticWeight {
    pub n: usize,
    #[serde(rename = "Pxx", with = "crate::io::cmat")]
    pub pxx: CMatrix,
    #[serde(rename = "Pxbx", with = "crate::io::cmat")]
    pub pxbx: CMatrix,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Convexity {
    pub strictly_convex: bool,
    /// Best constant in `Cl|x|² ≤ Φ(x)`.
    pub cl: f64,
    /// Best constant in `Φ(x) ≤ Cu|x|²`.
    pub cu: f64,
}

impl QuadraticWeight {
    pub fn new(pxx: CMatrix, pxbx: CMatrix, tol: &Tolerance) -> Result<Self> {
        let n = pxx.nrows();
        if pxx.shape() != (n, n) || pxbx.shape() != (n, n) || n == 0 {
            return Err(Error::Dimension("Pxx and Pxbx must be n x n".into()));
        }
        if !matcore::is_finite(&pxx) || !matcore::is_finite(&pxbx) {
            return Err(Error::Input("non-finite weight entry".into()));
        }
        let scale = fro(&pxx) + fro(&pxbx);
        let rs = fro(&(&pxx - pxx.transpose())) / scale.max(f64::MIN_POSITIVE);
        let rh = fro(&(&pxbx - pxbx.adjoint())) / scale.max(f64::MIN_POSITIVE);
        if rs > tol.sym_tol || rh > tol.sym_tol {
            return Err(Error::NotSymmetric(rs.max(rh)));
        }
        Ok(QuadraticWeight { n, pxx: matcore::symmetrize(&pxx), pxbx: matcore::hermitize(&pxbx) })
    }

    /// `c|x|²`.
    pub fn radial(n: usize, c: f64) -> Self {
        QuadraticWeight { n, pxx: CMatrix::zeros(n, n), pxbx: identity(n).scale(c) }
    }

    /// `¼|x|²`.
    pub fn phi0(n: usize) -> Self {
        Self::radial(n, 0.25)
    }

    /// `¼ Σ r_j |x_j|²`.
    pub fn radial_diagonal(r: &[f64]) -> Self {
        let d: Vec<Complex64> = r.iter().map(|&x| c64(0.25 * x, 0.0)).collect();
        QuadraticWeight { n: r.len(), pxx: CMatrix::zeros(r.len(), r.len()), pxbx: matcore::diag(&d) }
    }

    /// `¼|Gx|²`.
    pub fn from_g(g: &CMatrix) -> Self {
        let n = g.nrows();
        weight_from_gc(g, &CMatrix::zeros(n, n))
    }

    pub fn evaluate(&self, x: &[Complex64]) -> f64 {
        let n = self.n;
        let mut herm = c64(0.0, 0.0);
        let mut plh = c64(0.0, 0.0);
        for i in 0..n {
            for j in 0..n {
                herm += x[i].conj() * self.pxbx[(i, j)] * x[j];
                plh += x[i] * self.pxx[(i, j)] * x[j];
            }
        }
        herm.re + plh.re
    }

    /// `(Φ_herm, Φ_plh)`, the Hermitian and pluriharmonic parts.
    pub fn split(&self) -> (QuadraticWeight, QuadraticWeight) {
        let z = CMatrix::zeros(self.n, self.n);
        (
            QuadraticWeight { n: self.n, pxx: z.clone(), pxbx: self.pxbx.clone() },
            QuadraticWeight { n: self.n, pxx: self.pxx.clone(), pxbx: z },
        )
    }

    /// Real symmetric `H` with `Φ(u + iv) = [u; v]ᵗ H [u; v]`, i.e. `½∇²Φ`.
    pub fn real_hessian(&self) -> DMatrix<f64> {
        let n = self.n;
        let a = self.pxbx.map(|z| z.re);
        let b = self.pxbx.map(|z| z.im);
        let c = self.pxx.map(|z| z.re);
        let d = self.pxx.map(|z| z.im);
        let mut h = DMatrix::<f64>::zeros(2 * n, 2 * n);
        h.view_mut((0, 0), (n, n)).copy_from(&(&a + &c));
        h.view_mut((0, n), (n, n)).copy_from(&(-&b - &d));
        h.view_mut((n, 0), (n, n)).copy_from(&(&b - &d));
        h.view_mut((n, n), (n, n)).copy_from(&(&a - &c));
        (&h + h.transpose()) * 0.5
    }

    pub fn convexity(&self) -> Convexity {
        let ev = matcore::real_symmetric_eigenvalues(&self.real_hessian());
        let cl = ev[0];
        let cu = *ev.last().unwrap_or(&cl);
        Convexity { strictly_convex: cl > 1e-13 * cu.abs().max(f64::MIN_POSITIVE), cl, cu }
    }

    pub fn require_convex(&self) -> Result<Convexity> {
        let c = self.convexity();
        if c.strictly_convex {
            Ok(c)
        } else {
            Err(Error::NotConvex(c.cl))
        }
    }

    /// `r² Φ`.
    pub fn scaled(&self, r2: f64) -> Self {
        QuadraticWeight { n: self.n, pxx: self.pxx.scale(r2), pxbx: self.pxbx.scale(r2) }
    }

    /// `x ↦ Φ(Ax)`.
    pub fn pullback(&self, a: &CMatrix) -> Self {
        QuadraticWeight {
            n: self.n,
            pxx: matcore::symmetrize(&(a.transpose() * &self.pxx * a)),
            pxbx: matcore::hermitize(&(a.adjoint() * &self.pxbx * a)),
        }
    }

    /// Largest entrywise difference of the matrix data.
    pub fn distance(&self, other: &QuadraticWeight) -> f64 {
        fro(&(&self.pxx - &other.pxx)) + fro(&(&self.pxbx - &other.pxbx))
    }

    /// `‖Φ″_xx‖`; zero exactly when `H_Φ` has radial-type orthogonality.
    pub fn pluriharmonic_size(&self) -> f64 {
        matcore::spectral_norm(&self.pxx)
    }

    pub fn is_valid(&self, tol: &Tolerance) -> bool {
        symmetric_residual(&self.pxx) <= tol.sym_tol && hermitian_residual(&self.pxbx) <= tol.sym_tol
    }
}

/// `Φ(x) ≥ Cl|x|²` lower bound and `Φ ≤ Cu|x|²` upper bound.
pub fn is_strictly_convex(phi: &QuadraticWeight) -> (bool, f64, f64) {
    let c = phi.convexity();
    (c.strictly_convex, c.cl, c.cu)
}

/// The dual weight `Φ†`, built from `(G†, C₊†)` with
/// `E = (1 − C₊*C₊)^{−1/2}`, `G† = E(G*)^{−1}`, `C₊† = −E^{−t}C₊E`.
pub fn dual_weight(phi: &QuadraticWeight, tol: &Tolerance) -> Result<QuadraticWeight> {
    Ok(dual_weight_data(phi, tol)?.weight)
}

/// Intermediate data of [`dual_weight`].
#[derive(Debug, Clone)]
pub struct DualWeightData {
    pub g: CMatrix,
    pub c_plus: CMatrix,
    pub g_dagger: CMatrix,
    pub c_dagger: CMatrix,
    /// Relative asymmetry of `C₊†` before symmetrization.
    pub c_dagger_asymmetry: f64,
    pub weight: QuadraticWeight,
}

pub fn dual_weight_data(phi: &QuadraticWeight, tol: &Tolerance) -> Result<DualWeightData> {
    let (g, c_plus) = gc_from_weight(phi, tol)?;
    let n = phi.n;
    let one_minus = identity(n) - c_plus.adjoint() * &c_plus;
    let (_, e) = matcore::herm_sqrt_inv(&one_minus, tol).map_err(|_| Error::NotConvex(0.0))?;
    let g_dagger = &e * matcore::inverse(&g.adjoint())?;
    let e_inv_t = matcore::inverse(&e.transpose())?;
    let c_raw = -(e_inv_t * &c_plus * &e);
    let c_dagger_asymmetry = symmetric_residual(&c_raw);
    let c_dagger = matcore::symmetrize(&c_raw);
    let weight = weight_from_gc(&g_dagger, &c_dagger);
    Ok(DualWeightData { g, c_plus, g_dagger, c_dagger, c_dagger_asymmetry, weight })
}

/// `det(1 − C₊*C₊)` (real, in `(0, 1]`).
pub fn det_one_minus(c_plus: &CMatrix) -> f64 {
    let n = c_plus.nrows();
    (identity(n) - c_plus.adjoint() * c_plus).determinant().re
}

/// `‖1‖_{H_Φ} = (∫ e^{−2Φ} dL)^{1/2} = (π^n det(2H)^{−1/2})^{1/2}`.
pub fn norm_one(phi: &QuadraticWeight) -> Result<f64> {
    phi.require_convex()?;
    let h = phi.real_hessian() * 2.0;
    let det = h.determinant();
    Ok((std::f64::consts::PI.powi(phi.n as i32) / det.sqrt()).sqrt())
}

/// `C(α; n) = ∫_{S^{2n−1}} |ω^α|² dL = 2π^n α!/(|α|+n−1)!`, in log form.
pub fn ln_sphere_moment(alpha: &[u32]) -> f64 {
    let n = alpha.len();
    let k = multiindex::order(alpha) as usize;
    std::f64::consts::LN_2 + n as f64 * std::f64::consts::PI.ln() + multiindex::ln_alpha_factorial(alpha)
        - ln_factorial(k + n - 1)
}

/// `ln ∫_S |ω^α|² (4Φ(ω))^{−|α|−n} dL` on the unit sphere. The integrand
/// is rescaled by `(4 Cl)^p` so it stays in `[0, 1]` for large `|α|`.
///
/// The integrand is homogeneous of degree `−2n`, so for invertible `A`
/// the integral equals `|det A|² ∫_S F(Aω) dL`. With `A ∝ (Φ″_x̄x)^{−1/2}`
/// the pulled-back weight has isotropic hermitian part, which keeps the
/// quadrature cheap when `Φ″_x̄x` is badly conditioned.
pub fn ln_sphere_integral(phi: &QuadraticWeight, alpha: &[u32]) -> Result<f64> {
    phi.require_convex()?;
    let n = phi.n;
    let p = (multiindex::order(alpha) as usize + n) as i32;
    let mean = phi.pxbx.trace().re / n as f64;
    let isotropic = fro(&(&phi.pxbx - identity(n).scale(mean))) <= 1e-14 * fro(&phi.pxbx);
    let a = if isotropic {
        identity(n)
    } else {
        let (_, inv_root) = matcore::herm_sqrt_inv(&phi.pxbx, &Tolerance::default())?;
        let s = matcore::spectral_norm(&inv_root);
        inv_root.unscale(s)
    };
    let psi = phi.pullback(&a);
    let cl = psi.require_convex()?.cl;
    let mut x = vec![c64(0.0, 0.0); n];
    let v = SphereQuadrature::integrate_adaptive(n, |w| {
        for (i, xi) in x.iter_mut().enumerate() {
            *xi = (0..n).map(|j| a[(i, j)] * w[j]).sum();
        }
        let mut m = 1.0;
        for (xj, &aj) in x.iter().zip(alpha) {
            m *= xj.norm_sqr().powi(aj as i32);
        }
        m * (cl / psi.evaluate(w)).powi(p)
    })?;
    let ln_det = if isotropic { 0.0 } else { a.determinant().norm_sqr().ln() };
    Ok(v.ln() - p as f64 * (4.0 * cl).ln() + ln_det)
}

pub fn sphere_integral(phi: &QuadraticWeight, alpha: &[u32]) -> Result<f64> {
    Ok(ln_sphere_integral(phi, alpha)?.exp())
}

/// `J(Φ, α)`: the sphere integral divided by `C(α; n)`, so `J(Φ₀, α) = 1`.
pub fn j_factor(phi: &QuadraticWeight, alpha: &[u32]) -> Result<f64> {
    Ok((ln_sphere_integral(phi, alpha)? - ln_sphere_moment(alpha)).exp())
}

/// `ln ‖x^α‖²_{H_Φ} = ln(2^{|α|+n−1}(|α|+n−1)!) + ln ∫_S |ω^α|²(4Φ)^{−|α|−n}`.
pub fn ln_monomial_norm_sq(phi: &QuadraticWeight, alpha: &[u32]) -> Result<f64> {
    let k = multiindex::order(alpha) as usize + phi.n - 1;
    Ok(k as f64 * std::f64::consts::LN_2 + ln_factorial(k) + ln_sphere_integral(phi, alpha)?)
}

pub fn monomial_norm(phi: &QuadraticWeight, alpha: &[u32]) -> Result<f64> {
    Ok((0.5 * ln_monomial_norm_sq(phi, alpha)?).exp())
}

/// Gram matrix `⟨x^α, x^β⟩_{H_Φ}` for all `|α| ≤ d`, indexed by
/// [`multiindex::graded`] order. Entries are exact Gaussian moments.
pub fn monomial_gram(phi: &QuadraticWeight, d: u32) -> Result<(Vec<MultiIndex>, CMatrix)> {
    let table = MomentTable::new(phi, d)?;
    let basis = multiindex::graded(phi.n, d);
    let z = table.total_mass();
    let g = CMatrix::from_fn(basis.len(), basis.len(), |i, j| table.moment(&basis[i], &basis[j]) * z);
    Ok((basis, g))
}
