//! Exact Gaussian moments of `e^{−2Φ}` and tensor Gauss–Hermite rules on `C^n`.

use std::collections::HashMap;

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use super::QuadraticWeight;
use crate::error::{Error, Result};
use crate::matcore::{c64, CMatrix};
use crate::multiindex::{self, MultiIndex};
use crate::quadrature::gauss_hermite;

/// Normalized moments `E[x^α x̄^β]` of the probability density
/// `e^{−2Φ}/Z`, for `|α|, |β| ≤ d`, via the Gaussian integration-by-parts
/// (Stein) recursion.
#[derive(Debug, Clone)]
pub struct MomentTable {
    pub n: usize,
    pub d: u32,
    basis: Vec<MultiIndex>,
    index: HashMap<MultiIndex, usize>,
    values: Vec<Complex64>,
    total_mass: f64,
}

impl MomentTable {
    pub fn new(phi: &QuadraticWeight, d: u32) -> Result<Self> {
        phi.require_convex()?;
        let n = phi.n;
        let h = phi.real_hessian();
        let det2h = (&h * 2.0).determinant();
        let sigma = (&h * 4.0).try_inverse().ok_or(Error::Singular("real Hessian"))?;
        // x = T z with T = [I, iI].
        let t = CMatrix::from_fn(n, 2 * n, |i, j| {
            if j == i {
                c64(1.0, 0.0)
            } else if j == i + n {
                c64(0.0, 1.0)
            } else {
                c64(0.0, 0.0)
            }
        });
        let sc = sigma.map(|v| c64(v, 0.0));
        let sxx = &t * &sc * t.transpose();
        let sxxb = &t * &sc * t.adjoint();

        let basis = multiindex::graded(n, d);
        let index: HashMap<MultiIndex, usize> = basis.iter().cloned().enumerate().map(|(i, a)| (a, i)).collect();
        let nb = basis.len();
        // down[k][j] = index of basis[k] − e_j.
        let down: Vec<Vec<Option<usize>>> = basis
            .iter()
            .map(|a| {
                (0..n)
                    .map(|j| {
                        (a[j] > 0).then(|| {
                            let mut b = a.clone();
                            b[j] -= 1;
                            index[&b]
                        })
                    })
                    .collect()
            })
            .collect();

        let mut values = vec![c64(0.0, 0.0); nb * nb];
        for ia in 0..nb {
            let alpha = &basis[ia];
            for ib in 0..nb {
                if ia == 0 && ib == 0 {
                    values[0] = c64(1.0, 0.0);
                    continue;
                }
                let beta = &basis[ib];
                let mut acc = c64(0.0, 0.0);
                if let Some(i) = alpha.iter().position(|&a| a > 0) {
                    let ap = down[ia][i].unwrap();
                    for j in 0..n {
                        let apj = basis[ap][j];
                        if apj > 0 {
                            acc += sxx[(i, j)] * apj as f64 * values[down[ap][j].unwrap() * nb + ib];
                        }
                        if beta[j] > 0 {
                            acc += sxxb[(i, j)] * beta[j] as f64 * values[ap * nb + down[ib][j].unwrap()];
                        }
                    }
                } else {
                    let i = beta.iter().position(|&b| b > 0).unwrap();
                    let bp = down[ib][i].unwrap();
                    for j in 0..n {
                        let bpj = basis[bp][j];
                        if bpj > 0 {
                            acc += sxx[(i, j)].conj() * bpj as f64 * values[down[bp][j].unwrap()];
                        }
                    }
                }
                values[ia * nb + ib] = acc;
            }
        }
        let total_mass = std::f64::consts::PI.powi(n as i32) / det2h.sqrt();
        Ok(MomentTable { n, d, basis, index, values, total_mass })
    }

    /// `E[x^α x̄^β]`; panics if `|α|` or `|β|` exceeds `d`.
    pub fn moment(&self, alpha: &[u32], beta: &[u32]) -> Complex64 {
        let nb = self.basis.len();
        self.values[self.index[alpha] * nb + self.index[beta]]
    }

    /// `Z = ∫ e^{−2Φ} dL`.
    pub fn total_mass(&self) -> f64 {
        self.total_mass
    }

    pub fn basis(&self) -> &[MultiIndex] {
        &self.basis
    }

    /// Unnormalized Gram matrix over all `|α| ≤ d`.
    pub fn gram(&self) -> CMatrix {
        let nb = self.basis.len();
        CMatrix::from_fn(nb, nb, |i, j| self.values[i * nb + j] * self.total_mass)
    }
}

/// Tensor Gauss–Hermite rule for `∫_{C^n} g(x) e^{−zᵗ H_w z} dL(x)`,
/// `x = u + iv`, `z = [u; v]`.
#[derive(Debug, Clone)]
pub struct GaussHermite {
    pub n: usize,
    pub m: usize,
    l: DMatrix<f64>,
    det_l: f64,
    y: Vec<f64>,
    w: Vec<f64>,
}

impl GaussHermite {
    pub fn new(hw: &DMatrix<f64>, m: usize) -> Result<Self> {
        let dim = hw.nrows();
        if dim == 0 || dim % 2 != 0 || hw.ncols() != dim {
            return Err(Error::Dimension("weight Hessian must be 2n x 2n".into()));
        }
        let e = SymmetricEigen::new((hw + hw.transpose()) * 0.5);
        if e.eigenvalues.iter().any(|&l| l <= 0.0) {
            return Err(Error::NotConvex(e.eigenvalues.min()));
        }
        let inv_sqrt = DMatrix::from_diagonal(&e.eigenvalues.map(|l| l.powf(-0.5)));
        let l = &e.eigenvectors * inv_sqrt * e.eigenvectors.transpose();
        let det_l = e.eigenvalues.iter().map(|l| l.powf(-0.5)).product();
        let (y, w) = gauss_hermite(m);
        Ok(GaussHermite { n: dim / 2, m, l, det_l, y, w })
    }

    /// Calls `f(x, weight)` on every node.
    pub fn for_each(&self, mut f: impl FnMut(&[Complex64], f64)) {
        let dim = 2 * self.n;
        let mut idx = vec![0usize; dim];
        let mut y = vec![0.0; dim];
        let mut x = vec![c64(0.0, 0.0); self.n];
        loop {
            let mut wt = self.det_l;
            for k in 0..dim {
                y[k] = self.y[idx[k]];
                wt *= self.w[idx[k]];
            }
            for i in 0..self.n {
                let (mut u, mut v) = (0.0, 0.0);
                for k in 0..dim {
                    u += self.l[(i, k)] * y[k];
                    v += self.l[(i + self.n, k)] * y[k];
                }
                x[i] = c64(u, v);
            }
            f(&x, wt);
            let mut k = 0;
            loop {
                if k == dim {
                    return;
                }
                idx[k] += 1;
                if idx[k] < self.m {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
        }
    }

    pub fn integrate(&self, mut g: impl FnMut(&[Complex64]) -> Complex64) -> Complex64 {
        let mut acc = c64(0.0, 0.0);
        self.for_each(|x, w| acc += g(x) * w);
        acc
    }
}

/// `⟨f, g⟩_{H_Φ} = ∫ f ḡ e^{−2Φ} dL` by an `m`-point tensor rule.
pub fn gauss_hermite_inner(
    phi: &QuadraticWeight,
    m: usize,
    f: impl Fn(&[Complex64]) -> Complex64,
    g: impl Fn(&[Complex64]) -> Complex64,
) -> Result<Complex64> {
    let rule = GaussHermite::new(&(phi.real_hessian() * 2.0), m)?;
    Ok(rule.integrate(|x| f(x) * g(x).conj()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matcore::{from_rows, Tolerance};

    fn skew_weight() -> QuadraticWeight {
        let pxx = from_rows(&[&[c64(0.03, 0.05), c64(0.01, -0.02)], &[c64(0.01, -0.02), c64(-0.04, 0.0)]]);
        let pxbx = from_rows(&[&[c64(0.3, 0.0), c64(0.05, 0.02)], &[c64(0.05, -0.02), c64(0.2, 0.0)]]);
        QuadraticWeight::new(pxx, pxbx, &Tolerance::default()).unwrap()
    }

    #[test]
    fn radial_moments_are_factorial() {
        // Φ₀: ‖x^α‖² = π^n α! 2^{|α|+n}
        let t = MomentTable::new(&QuadraticWeight::phi0(2), 4).unwrap();
        let g = t.moment(&[3, 1], &[3, 1]) * t.total_mass();
        let want = std::f64::consts::PI.powi(2) * 6.0 * 2f64.powi(6);
        assert!((g.re - want).abs() < 1e-12 * want && g.im.abs() < 1e-12 * want);
        assert!(t.moment(&[2, 0], &[1, 1]).norm() < 1e-15);
    }

    #[test]
    fn moments_match_quadrature() {
        let phi = skew_weight();
        let t = MomentTable::new(&phi, 3).unwrap();
        let rule = GaussHermite::new(&(phi.real_hessian() * 2.0), 16).unwrap();
        for (a, b) in [(vec![1, 0], vec![1, 0]), (vec![2, 1], vec![0, 1]), (vec![0, 2], vec![2, 0]), (vec![1, 2], vec![1, 2])] {
            let q = rule.integrate(|x| {
                let xa = x[0].powu(a[0]) * x[1].powu(a[1]);
                let xb = x[0].powu(b[0]) * x[1].powu(b[1]);
                xa * xb.conj()
            });
            let exact = t.moment(&a, &b) * t.total_mass();
            assert!((q - exact).norm() < 1e-11 * exact.norm().max(1.0), "{a:?} {b:?}: {q} vs {exact}");
        }
    }
}
