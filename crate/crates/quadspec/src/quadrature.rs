//! One-dimensional Gauss rules.

use nalgebra::{DMatrix, SymmetricEigen};

/// Gauss–Legendre nodes and weights on `[a, b]`.
pub fn gauss_legendre(m: usize, a: f64, b: f64) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; m];
    let mut w = vec![0.0; m];
    let mf = m as f64;
    for i in 0..m.div_ceil(2) {
        let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (mf + 0.5)).cos();
        let mut dp = 1.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, z);
            for k in 2..=m {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * z * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            let p = if m == 0 { 1.0 } else if m == 1 { z } else { p1 };
            let pm = if m == 1 { 1.0 } else { p0 };
            dp = mf * (z * p - pm) / (z * z - 1.0);
            let dz = p / dp;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        let wi = 2.0 / ((1.0 - z * z) * dp * dp);
        x[i] = -z;
        x[m - 1 - i] = z;
        w[i] = wi;
        w[m - 1 - i] = wi;
    }
    let half = 0.5 * (b - a);
    let mid = 0.5 * (b + a);
    (x.iter().map(|t| mid + half * t).collect(), w.iter().map(|t| t * half).collect())
}

/// Gauss–Hermite rule for `∫ f(y) e^{−y²} dy`.
pub fn gauss_hermite(m: usize) -> (Vec<f64>, Vec<f64>) {
    let mut jac = DMatrix::<f64>::zeros(m, m);
    for k in 1..m {
        let b = (k as f64 / 2.0).sqrt();
        jac[(k, k - 1)] = b;
        jac[(k - 1, k)] = b;
    }
    let e = SymmetricEigen::new(jac);
    let mut x: Vec<f64> = e.eigenvalues.iter().copied().collect();
    x.sort_by(f64::total_cmp);
    // Newton polish, then Christoffel weights 1/(m p_{m−1}²) for orthonormal p.
    let w = x
        .iter_mut()
        .map(|x| {
            for _ in 0..3 {
                let (p, dp) = hermite_normalized(m, *x);
                let dx = p / dp;
                *x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (pm1, _) = hermite_normalized(m - 1, *x);
            1.0 / (m as f64 * pm1 * pm1)
        })
        .collect();
    (x, w)
}

/// Orthonormal `h_m(x)` w.r.t. `e^{−x²}` and its derivative.
fn hermite_normalized(m: usize, x: f64) -> (f64, f64) {
    let mut p0 = 0.0;
    let mut p1 = std::f64::consts::PI.powf(-0.25);
    for k in 1..=m {
        let kf = k as f64;
        let p2 = x * (2.0 / kf).sqrt() * p1 - ((kf - 1.0) / kf).sqrt() * p0;
        p0 = p1;
        p1 = p2;
    }
    (p1, (2.0 * m as f64).sqrt() * p0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn legendre_integrates_polynomials() {
        let (x, w) = gauss_legendre(10, 0.0, 2.0);
        let s: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(19)).sum();
        assert!((s - 2f64.powi(20) / 20.0).abs() < 1e-9 * 2f64.powi(20) / 20.0);
        let (x, w) = gauss_legendre(1, -1.0, 1.0);
        assert!(x[0].abs() < 1e-15 && (w[0] - 2.0).abs() < 1e-15);
    }

    #[test]
    fn hermite_integrates_moments() {
        for m in [5, 20, 40] {
            let (x, w) = gauss_hermite(m);
            let s0: f64 = w.iter().sum();
            assert!((s0 - std::f64::consts::PI.sqrt()).abs() < 1e-13);
            let s4: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(4)).sum();
            assert!((s4 - 0.75 * std::f64::consts::PI.sqrt()).abs() < 1e-12);
        }
    }
}
