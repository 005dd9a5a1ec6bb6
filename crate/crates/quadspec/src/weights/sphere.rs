//! Product quadrature on the unit sphere `S^{2n−1} ⊂ C^n`.
//!
//! `ω = (r_1 e^{iθ_1}, …, r_n e^{iθ_n})` with `r` in the positive orthant of
//! `S^{n−1}` (hyperspherical angles, Gauss–Legendre) and trapezoidal phases;
//! the surface measure is `Π r_j dσ(r) dθ`.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::quadrature::gauss_legendre;

/// Relative agreement required between successive refinements.
pub const QUAD_REL_TOL: f64 = 1e-8;

const NODE_BUDGET: usize = 20_000_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SphereQuadrature {
    pub n: usize,
    /// Gauss–Legendre nodes per angle and trapezoid nodes per phase.
    pub level: usize,
}

impl SphereQuadrature {
    pub fn new(n: usize, level: usize) -> Self {
        SphereQuadrature { n, level: level.max(1) }
    }

    pub fn node_count(&self) -> usize {
        self.level.saturating_pow(2 * self.n as u32 - 1)
    }

    pub fn integrate(&self, mut f: impl FnMut(&[Complex64]) -> f64) -> f64 {
        let n = self.n;
        let (gx, gw) = gauss_legendre(self.level, 0.0, FRAC_PI_2);
        let m = self.level;
        let phases: Vec<Complex64> = (0..m).map(|k| Complex64::from_polar(1.0, 2.0 * PI * k as f64 / m as f64)).collect();
        let wth = (2.0 * PI / m as f64).powi(n as i32);
        let mut w = vec![Complex64::new(0.0, 0.0); n];
        let mut idx = vec![0usize; n];
        let mut total = 0.0;
        for (r, wr) in orthant_rule(n, &gx, &gw) {
            let mut acc = 0.0;
            idx.fill(0);
            'phases: loop {
                for j in 0..n {
                    w[j] = phases[idx[j]] * r[j];
                }
                acc += f(&w);
                let mut j = 0;
                loop {
                    if j == n {
                        break 'phases;
                    }
                    idx[j] += 1;
                    if idx[j] < m {
                        break;
                    }
                    idx[j] = 0;
                    j += 1;
                }
            }
            total += wr * acc * wth;
        }
        total
    }

    /// Refines the level (×2, or ×1.5 for `n ≥ 3`) until two successive
    /// values agree to [`QUAD_REL_TOL`]; returns the finer value.
    pub fn integrate_adaptive(n: usize, mut f: impl FnMut(&[Complex64]) -> f64) -> Result<f64> {
        let mut level = match n {
            0 => return Err(Error::Dimension("sphere in C^0".into())),
            1 => 64,
            2 => 16,
            _ => 6,
        };
        let next = |l: usize| if n >= 3 { l + l / 2 } else { 2 * l };
        let mut prev = SphereQuadrature::new(n, level).integrate(&mut f);
        loop {
            level = next(level);
            let rule = SphereQuadrature::new(n, level);
            if rule.node_count() > NODE_BUDGET {
                return Err(Error::QuadratureNotConverged(f64::NAN));
            }
            let cur = rule.integrate(&mut f);
            let rel = (cur - prev).abs() / cur.abs().max(f64::MIN_POSITIVE);
            if rel <= QUAD_REL_TOL || (cur == 0.0 && prev == 0.0) {
                return Ok(cur);
            }
            if SphereQuadrature::new(n, next(level)).node_count() > NODE_BUDGET {
                return Err(Error::QuadratureNotConverged(rel));
            }
            prev = cur;
        }
    }
}

/// Nodes `r` on the positive orthant of `S^{n−1}` with weights including `Π r_j`.
fn orthant_rule(n: usize, gx: &[f64], gw: &[f64]) -> Vec<(Vec<f64>, f64)> {
    fn rec(n: usize, gx: &[f64], gw: &[f64]) -> Vec<(Vec<f64>, f64)> {
        if n == 1 {
            return vec![(vec![1.0], 1.0)];
        }
        let sub = rec(n - 1, gx, gw);
        let mut out = Vec::with_capacity(gx.len() * sub.len());
        for (&phi, &w) in gx.iter().zip(gw) {
            let (s, c) = phi.sin_cos();
            for (r, wr) in &sub {
                let mut v = Vec::with_capacity(n);
                v.push(c);
                v.extend(r.iter().map(|x| s * x));
                out.push((v, w * s.powi(n as i32 - 2) * wr));
            }
        }
        out
    }
    rec(n, gx, gw).into_iter().map(|(r, w)| {
        let p: f64 = r.iter().product();
        (r, w * p)
    }).collect()
}
