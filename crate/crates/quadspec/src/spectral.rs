//! Eigenvalue lattice `μ_α`, Taylor-truncation spectral projections, exact
//! projection norms with a brute-force Gram oracle, bounds, 1-D asymptotics,
//! exponential growth rates and the orthogonality criterion.
//!
//! Projection norms are computed at `h = 1`; they do not depend on `h`.

use std::f64::consts::PI;

use nalgebra::Cholesky;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matcore::{self, c64, fro, identity, CMatrix, Tolerance};
use crate::multiindex::{self, MultiIndex};
use crate::normalform::{self, NormalFormResult};
use crate::optimize::NelderMead;
use crate::poly::Poly;
use crate::symplectic::{hamilton_map, QuadraticForm};
use crate::weights::{self, MomentTable, QuadraticWeight};

/// `μ_α = (h/i) Σ (2α_j + 1) λ_j`.
pub fn mu(lambdas: &[Complex64], alpha: &[u32], h: f64) -> Complex64 {
    let s: Complex64 = lambdas.iter().zip(alpha).map(|(l, &a)| l * (2.0 * a as f64 + 1.0)).sum();
    s * c64(0.0, -h)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LatticePoint {
    #[serde(with = "crate::io::cnum")]
    pub mu: Complex64,
    pub alphas: Vec<MultiIndex>,
    pub simple: bool,
}

impl LatticePoint {
    pub fn multiplicity(&self) -> usize {
        self.alphas.len()
    }
}

/// Relative tolerance below which two lattice values are the same eigenvalue.
pub const COLLISION_TOL: f64 = 1e-9;

/// All `μ_α` with `|μ_α| ≤ r`, grouped by value and sorted by `(Re μ, Im μ)`.
///
/// Since `Re μ_α ≥ h(2|α| + n) min Im λ_j`, only `|α| ≤ r/(2h min Im λ)`
/// need to be visited.
pub fn enumerate_lattice(lambdas: &[Complex64], r: f64, h: f64, tol: f64) -> Result<Vec<LatticePoint>> {
    let n = lambdas.len();
    if n == 0 || !(h > 0.0) || !r.is_finite() {
        return Err(Error::Input("need n ≥ 1, h > 0 and finite R".into()));
    }
    let min_im = lambdas.iter().map(|l| l.im).fold(f64::INFINITY, f64::min);
    if !(min_im > 0.0) {
        return Err(Error::Input(format!("all Im λ must be positive (min {min_im:e})")));
    }
    let kmax = (r / (2.0 * h * min_im)).floor().max(0.0) as u32;
    let mut pts: Vec<(Complex64, MultiIndex)> = Vec::new();
    for k in 0..=kmax {
        for a in multiindex::homogeneous(n, k) {
            let z = mu(lambdas, &a, h);
            if z.norm() <= r {
                pts.push((z, a));
            }
        }
    }
    pts.sort_by(|a, b| a.0.re.total_cmp(&b.0.re).then(a.0.im.total_cmp(&b.0.im)));
    // Group by proximity; values are well separated except for true collisions.
    let mut groups: Vec<LatticePoint> = Vec::new();
    let mut used = vec![false; pts.len()];
    for i in 0..pts.len() {
        if used[i] {
            continue;
        }
        let z = pts[i].0;
        let mut alphas = vec![pts[i].1.clone()];
        used[i] = true;
        for j in i + 1..pts.len() {
            if pts[j].0.re - z.re > tol * (1.0 + z.norm()) {
                break;
            }
            if !used[j] && (pts[j].0 - z).norm() <= tol * (1.0 + z.norm()) {
                alphas.push(pts[j].1.clone());
                used[j] = true;
            }
        }
        alphas.sort_by(|a, b| b.cmp(a));
        let simple = alphas.len() == 1;
        groups.push(LatticePoint { mu: z, alphas, simple });
    }
    Ok(groups)
}

/// Keeps the Taylor coefficients indexed by `s`.
pub fn taylor_projection(p: &Poly, s: &[MultiIndex]) -> Poly {
    p.filter(|a| s.iter().any(|b| b.as_slice() == a))
}

/// Operator norm of [`taylor_projection`] onto `s`, restricted to polynomials
/// of degree `≤ d` in `H_Φ`, from the Gram matrix of that space.
pub fn tau_norm_at(phi: &QuadraticWeight, s: &[MultiIndex], d: u32) -> Result<f64> {
    GramOracle::new(phi, d)?.norm(s)
}

/// Factored Gram matrix at one truncation degree; reused across index sets.
///
/// The space of polynomials of degree `≤ d` is spanned by the monomials
/// `y^β` in `y = Gx`, `G = 2(Φ″_x̄x)^{1/2}`, in which the weight is
/// `¼|y|² + Re(…)`: much better conditioned than `x^α` when `Φ″_x̄x` is
/// far from scalar. Taylor coefficients in `x` are recovered exactly shell
/// by shell.
pub struct GramOracle {
    pub d: u32,
    n: usize,
    g: CMatrix,
    g_inv: CMatrix,
    basis: Vec<MultiIndex>,
    /// `P[i, j] = ⟨y^{β_j}, y^{β_i}⟩`, so `‖Σ c_β y^β‖² = c*Pc`; and its
    /// symmetric diagonal scaling.
    gram: CMatrix,
    scale: Vec<f64>,
    chol: Cholesky<Complex64, nalgebra::Dyn>,
}

/// `(Ax)^β` as a polynomial in `x`.
fn linear_power(a: &CMatrix, beta: &[u32]) -> Poly {
    let n = a.nrows();
    let mut p = Poly::one(n);
    for (j, &bj) in beta.iter().enumerate() {
        for _ in 0..bj {
            let mut q = Poly::zero(n);
            for i in 0..n {
                if a[(j, i)] != c64(0.0, 0.0) {
                    q = q.add(&p.times_x(i).scale(a[(j, i)]));
                }
            }
            p = q;
        }
    }
    p
}

impl GramOracle {
    pub fn new(phi: &QuadraticWeight, d: u32) -> Result<Self> {
        let n = phi.n;
        let (root, _) = matcore::herm_sqrt_inv(&phi.pxbx, &Tolerance::default())?;
        let g = root.scale(2.0);
        let g_inv = matcore::inverse(&g)?;
        let table = MomentTable::new(&phi.pullback(&g_inv), d)?;
        let basis = table.basis().to_vec();
        let nb = basis.len();
        let gram = matcore::hermitize(&CMatrix::from_fn(nb, nb, |i, j| table.moment(&basis[j], &basis[i])));
        let scale: Vec<f64> = (0..nb).map(|i| gram[(i, i)].re.sqrt()).collect();
        let scaled = CMatrix::from_fn(nb, nb, |i, j| gram[(i, j)] / (scale[i] * scale[j]));
        let chol = Cholesky::new(scaled).ok_or(Error::NotPositiveDefinite(f64::NAN))?;
        Ok(GramOracle { d, n, g, g_inv, basis, gram, scale, chol })
    }

    /// `1/min L_ii²` over the Cholesky pivots: a lower estimate of the
    /// condition number of the scaled Gram matrix.
    pub fn condition_estimate(&self) -> f64 {
        let l = self.chol.l_dirty();
        let m = (0..l.nrows()).map(|i| l[(i, i)].norm_sqr()).fold(f64::INFINITY, f64::min);
        1.0 / m
    }

    /// `sup ‖τ_S p‖/‖p‖` over `deg p ≤ d`, where `τ_S` keeps the Taylor
    /// coefficients (in `x`) indexed by `s`.
    pub fn norm(&self, s: &[MultiIndex]) -> Result<f64> {
        if s.is_empty() {
            return Ok(0.0);
        }
        if let Some(a) = s.iter().find(|a| a.len() != self.n || multiindex::order(a) > self.d) {
            return Err(Error::Input(format!("index {a:?} exceeds truncation degree {}", self.d)));
        }
        // shells touched by s
        let mut degrees: Vec<u32> = s.iter().map(|a| multiindex::order(a)).collect();
        degrees.sort_unstable();
        degrees.dedup();
        let cols: Vec<usize> =
            (0..self.basis.len()).filter(|&i| degrees.contains(&multiindex::order(&self.basis[i]))).collect();
        let (k, m) = (s.len(), cols.len());
        // x^α-coefficient of y^β, and y^β-coefficient of x^α
        let mut t = CMatrix::zeros(k, m);
        let mut u = CMatrix::zeros(k, m);
        for (c, &bi) in cols.iter().enumerate() {
            let py = linear_power(&self.g, &self.basis[bi]);
            for (r, a) in s.iter().enumerate() {
                t[(r, c)] = py.coeff(a);
            }
        }
        for (r, a) in s.iter().enumerate() {
            let px = linear_power(&self.g_inv, a);
            for (c, &bi) in cols.iter().enumerate() {
                u[(r, c)] = px.coeff(&self.basis[bi]);
            }
        }
        let nb = self.basis.len();
        let e = CMatrix::from_fn(nb, m, |i, j| if i == cols[j] { c64(1.0, 0.0) } else { c64(0.0, 0.0) });
        let x = self.chol.solve(&e);
        // (P⁻¹)_BB and P_BB
        let pinv = CMatrix::from_fn(m, m, |i, j| x[(cols[i], j)] / (self.scale[cols[i]] * self.scale[cols[j]]));
        let pbb = CMatrix::from_fn(m, m, |i, j| self.gram[(cols[i], cols[j])]);
        let mid = matcore::hermitize(&(&t * pinv * t.adjoint()));
        let gs = matcore::hermitize(&(u.map(|z| z.conj()) * pbb * u.transpose()));
        let r = Cholesky::new(gs).ok_or(Error::NotPositiveDefinite(f64::NAN))?.l();
        let h = matcore::hermitize(&(r.adjoint() * mid * &r));
        let (ev, _) = matcore::hermitian_eigen(&h);
        Ok(ev.last().copied().unwrap_or(0.0).max(0.0).sqrt())
    }
}

/// Beyond this estimated condition number the Gaussian moments no longer
/// carry enough digits; the oracle stops raising the degree.
pub const GRAM_CONDITION_LIMIT: f64 = 1e9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleResult {
    pub value: f64,
    pub converged: bool,
    /// Truncation degree of the returned value.
    pub degree: u32,
    pub history: Vec<(u32, f64)>,
    /// Stopped because rounding, not truncation, dominated.
    pub floor_reached: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleOptions {
    pub d_step: u32,
    pub d_max: u32,
    /// Successive values must agree to this relative tolerance.
    pub rel_tol: f64,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions { d_step: 8, d_max: 64, rel_tol: 1e-9 }
    }
}

/// [`tau_norm_at`] for several index sets, raising the truncation degree from
/// `d0` until successive values agree. Non-convergence is reported by the
/// flag, not an error.
pub fn tau_norm_oracle_many(
    phi: &QuadraticWeight,
    sets: &[Vec<MultiIndex>],
    d0: u32,
    opts: &OracleOptions,
) -> Result<Vec<OracleResult>> {
    let need = sets.iter().flatten().map(|a| multiindex::order(a)).max().unwrap_or(0);
    let mut d = d0.max(need);
    let mut out: Vec<OracleResult> =
        sets.iter().map(|_| OracleResult { value: 0.0, converged: false, degree: d, history: vec![], floor_reached: false }).collect();
    loop {
        let oracle = match GramOracle::new(phi, d) {
            Ok(o) if o.condition_estimate() > GRAM_CONDITION_LIMIT && !out[0].history.is_empty() => {
                for r in out.iter_mut().filter(|r| !r.converged) {
                    r.floor_reached = true;
                }
                break;
            }
            Ok(o) => o,
            // Gram lost definiteness in floating point: keep the last values.
            Err(Error::NotPositiveDefinite(_)) if out[0].history.len() > 0 => break,
            Err(e) => return Err(e),
        };
        for (s, r) in sets.iter().zip(out.iter_mut()) {
            if r.converged || r.floor_reached {
                continue;
            }
            let v = oracle.norm(s)?;
            r.history.push((d, v));
            if let Some(&(_, prev)) = r.history.iter().rev().nth(1) {
                let close = (v - prev).abs() <= opts.rel_tol * v.abs().max(f64::MIN_POSITIVE);
                if v < prev {
                    // The exact truncations increase with d; a decrease is the
                    // rounding floor of the Gram matrix. Keep the previous value.
                    r.converged = close;
                    r.floor_reached = true;
                    continue;
                }
                r.converged = close;
            }
            r.value = v;
            r.degree = d;
        }
        let all = out.iter().all(|r| r.converged || r.floor_reached);
        if all || d + opts.d_step > opts.d_max {
            break;
        }
        d += opts.d_step;
    }
    Ok(out)
}

pub fn tau_norm_oracle(phi: &QuadraticWeight, s: &[MultiIndex], d0: u32) -> Result<OracleResult> {
    Ok(tau_norm_oracle_many(phi, &[s.to_vec()], d0, &OracleOptions::default())?.remove(0))
}

/// `‖Π_α‖ = (det(1 − C₊*C₊)^{−1/2} J(Φ, α) J(Φ†, α))^{1/2}`.
pub fn projection_norm_formula(phi: &QuadraticWeight, alpha: &[u32], tol: &Tolerance) -> Result<f64> {
    Ok(ln_projection_norm(phi, alpha, tol)?.exp())
}

pub fn ln_projection_norm(phi: &QuadraticWeight, alpha: &[u32], tol: &Tolerance) -> Result<f64> {
    check_alpha(phi, alpha)?;
    let data = weights::dual_weight_data(phi, tol)?;
    let ln_det = weights::det_one_minus(&data.c_plus).ln();
    let lj = weights::ln_sphere_integral(phi, alpha)? - weights::ln_sphere_moment(alpha);
    let ljd = weights::ln_sphere_integral(&data.weight, alpha)? - weights::ln_sphere_moment(alpha);
    Ok(0.5 * (-0.5 * ln_det + lj + ljd))
}

fn check_alpha(phi: &QuadraticWeight, alpha: &[u32]) -> Result<()> {
    if alpha.len() != phi.n {
        return Err(Error::Dimension(format!("multi-index of length {} for n = {}", alpha.len(), phi.n)));
    }
    Ok(())
}

/// `(Cu/Cl)^{(n+M)/2}` with `M = max_{α∈S} |α|`.
pub fn tau_bound(phi: &QuadraticWeight, s: &[MultiIndex]) -> Result<f64> {
    let c = phi.require_convex()?;
    let m = s.iter().map(|a| multiindex::order(a)).max().unwrap_or(0);
    Ok((c.cu / c.cl).powf(0.5 * (phi.n as f64 + m as f64)))
}

/// `(min_{|ω|=1} 4Φ(ω))^{−|α|−n} ≥ J(Φ, α)`.
pub fn exact_j_bound(phi: &QuadraticWeight, alpha: &[u32]) -> Result<f64> {
    let c = phi.require_convex()?;
    Ok((4.0 * c.cl).powi(-((multiindex::order(alpha) as usize + phi.n) as i32)))
}

/// `(det(1 − C₊*C₊)^{−1/2} · bound(Φ) · bound(Φ†))^{1/2}`, dominating
/// [`projection_norm_formula`].
pub fn upper_bound_exact(phi: &QuadraticWeight, alpha: &[u32], tol: &Tolerance) -> Result<f64> {
    let data = weights::dual_weight_data(phi, tol)?;
    let det = weights::det_one_minus(&data.c_plus);
    Ok((det.powf(-0.5) * exact_j_bound(phi, alpha)? * exact_j_bound(&data.weight, alpha)?).sqrt())
}

/// `(1/π)∫_0^π ((1−c)/(1 − c cos 2t))^{N+1} dt` by the periodic trapezoid
/// rule, refined until spectrally converged.
fn scaled_circle_integral(c: f64, n: u32) -> Result<f64> {
    let f = |t: f64| ((1.0 - c) / (1.0 - c * (2.0 * t).cos())).powi(n as i32 + 1);
    let rule = |m: usize| (0..m).map(|k| f(PI * k as f64 / m as f64)).sum::<f64>() / m as f64;
    let mut m = 64;
    let mut prev = rule(m);
    while m < 1 << 22 {
        m *= 2;
        let cur = rule(m);
        if (cur - prev).abs() <= 1e-13 * cur {
            return Ok(cur);
        }
        prev = cur;
    }
    Err(Error::QuadratureNotConverged((rule(m) - prev).abs() / prev))
}

/// `ln ‖Π_N‖` in one dimension for `|C₊| = c`, independent of `G`:
/// `‖Π_N‖² = (1 − c²)^{N+½} I_N²` with `I_N` the circle average of
/// `(1 − c cos 2t)^{−N−1}`.
pub fn ln_projection_norm_1d(c: f64, n: u32) -> Result<f64> {
    if !(0.0..1.0).contains(&c) {
        return Err(Error::Input(format!("|C+| = {c} must lie in [0, 1)")));
    }
    let ln_i = scaled_circle_integral(c, n)?.ln() - (n as f64 + 1.0) * (1.0 - c).ln();
    Ok(0.25 * (2.0 * n as f64 + 1.0) * (1.0 - c * c).ln() + ln_i)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Asymptotics1d {
    pub n: u32,
    /// `((1−|C₊|)/(1+|C₊|))^{N/2} ‖Π_N‖`.
    pub scaled_norm: f64,
    /// `c₀ N^{−1/2}`.
    pub leading_term: f64,
    pub c0: f64,
}

/// `c₀ = (2π|C₊|)^{−1/2} ((1+|C₊|)/(1−|C₊|))^{1/4}`.
pub fn leading_constant_1d(c: f64) -> f64 {
    (2.0 * PI * c).powf(-0.5) * ((1.0 + c) / (1.0 - c)).powf(0.25)
}

pub fn asymptotics_1d(c_plus: Complex64, n: u32) -> Result<Asymptotics1d> {
    let c = c_plus.norm();
    if c < 1e-12 {
        return Err(Error::DegenerateCplus(c));
    }
    if c >= 1.0 {
        return Err(Error::NotConvex(1.0 - c));
    }
    let ln_scaled = 0.5 * n as f64 * ((1.0 - c) / (1.0 + c)).ln() + ln_projection_norm_1d(c, n)?;
    let c0 = leading_constant_1d(c);
    Ok(Asymptotics1d { n, scaled_norm: ln_scaled.exp(), leading_term: c0 / (n as f64).sqrt(), c0 })
}

/// Result of [`growth_rate`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GrowthRate {
    pub beta: Vec<f64>,
    pub g: f64,
    /// `log sup_{|ω|=1} |ω^β|²/(4Φ(ω))`.
    pub log_sup: f64,
    /// Same for `Φ†`.
    pub log_sup_dual: f64,
    /// `−Σ β_j log β_j`.
    pub entropy: f64,
    /// Largest multistart disagreement among the top starts.
    pub spread: f64,
}

pub const MULTISTART_TOL: f64 = 1e-8;

/// `g = ½ log S(Φ) + ½ log S(Φ†) − Σ β_j log β_j`.
pub fn growth_rate(phi: &QuadraticWeight, beta: &[f64], tol: &Tolerance) -> Result<GrowthRate> {
    let n = phi.n;
    if beta.len() != n || beta.iter().any(|&b| !(b >= 0.0) || !b.is_finite()) {
        return Err(Error::Input("β must be a nonnegative vector of length n".into()));
    }
    let total: f64 = beta.iter().sum();
    if (total - 1.0).abs() > 1e-12 {
        return Err(Error::Input(format!("|β|₁ = {total} must equal 1")));
    }
    phi.require_convex()?;
    let dual = weights::dual_weight(phi, tol)?;
    let (a, sa) = log_sup_sphere(phi, beta)?;
    let (b, sb) = log_sup_sphere(&dual, beta)?;
    let entropy = -beta.iter().filter(|&&b| b > 0.0).map(|b| b * b.ln()).sum::<f64>();
    Ok(GrowthRate { beta: beta.to_vec(), g: 0.5 * a + 0.5 * b + entropy, log_sup: a, log_sup_dual: b, entropy, spread: sa.max(sb) })
}

/// Unit vector from `n − 1` hyperspherical angles and `n` phases.
fn sphere_point(n: usize, p: &[f64], out: &mut [Complex64]) {
    let mut s = 1.0;
    for j in 0..n {
        let r = if j + 1 < n { s * p[j].cos() } else { s };
        if j + 1 < n {
            s *= p[j].sin();
        }
        out[j] = Complex64::from_polar(r, p[n - 1 + j]);
    }
}

/// `max_{|ω|=1} log(|ω^β|²/(4Φ(ω)))` by grid search and Nelder–Mead polish;
/// returns the value and the multistart spread.
pub fn log_sup_sphere(phi: &QuadraticWeight, beta: &[f64]) -> Result<(f64, f64)> {
    let n = phi.n;
    let dims = 2 * n - 1;
    let mut w = vec![c64(0.0, 0.0); n];
    let mut obj = |p: &[f64]| -> f64 {
        sphere_point(n, p, &mut w);
        let mut v = -(4.0 * phi.evaluate(&w)).ln();
        for (wj, &b) in w.iter().zip(beta) {
            if b > 0.0 {
                v += b * wj.norm_sqr().ln();
            }
        }
        if v.is_nan() {
            f64::NEG_INFINITY
        } else {
            v
        }
    };
    // Grid: ≥ 32 nodes per coordinate while the product stays modest.
    let per = if dims <= 3 { 32 } else { ((4.0e6f64).powf(1.0 / dims as f64).floor() as usize).max(6) };
    let per_phase = if n == 1 { 64 } else { per };
    let sizes: Vec<usize> = (0..dims).map(|k| if k < n - 1 { per } else { per_phase }).collect();
    let coord = |k: usize, i: usize| -> f64 {
        if k < n - 1 {
            (i as f64 + 0.5) * (PI / 2.0) / sizes[k] as f64
        } else {
            2.0 * PI * i as f64 / sizes[k] as f64
        }
    };
    const STARTS: usize = 8;
    let mut best: Vec<(f64, Vec<f64>)> = Vec::with_capacity(STARTS + 1);
    let mut idx = vec![0usize; dims];
    let mut p = vec![0.0; dims];
    loop {
        for k in 0..dims {
            p[k] = coord(k, idx[k]);
        }
        let v = obj(&p);
        if best.len() < STARTS || v > best[best.len() - 1].0 {
            let pos = best.iter().position(|(b, _)| v > *b).unwrap_or(best.len());
            best.insert(pos, (v, p.clone()));
            best.truncate(STARTS);
        }
        let mut k = 0;
        loop {
            if k == dims {
                break;
            }
            idx[k] += 1;
            if idx[k] < sizes[k] {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
        if k == dims {
            break;
        }
    }
    let step = 0.5 * PI / per as f64;
    let nm = NelderMead { initial_step: step, ..NelderMead::default() };
    let mut vals: Vec<f64> = best.iter().map(|(_, x0)| nm.maximize(&mut obj, x0).value).collect();
    vals.sort_by(|a, b| b.total_cmp(a));
    let top = vals[0];
    if !top.is_finite() {
        return Err(Error::OptimizerNotConverged(f64::INFINITY));
    }
    // Agreement with the runner-up start; a lone best start is not trusted.
    let spread = (top - vals[1]).abs();
    if spread > MULTISTART_TOL {
        return Err(Error::OptimizerNotConverged(spread));
    }
    Ok((top, spread))
}

/// Bounds for one spectral projection.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Bounds {
    /// `(Cu/Cl)^{(n+M)/2}`.
    pub tau: f64,
    /// Exact-infimum bound; absent for non-simple points.
    pub exact: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProjectionNormReport {
    #[serde(with = "crate::io::cnum")]
    pub mu: Complex64,
    pub alphas: Vec<MultiIndex>,
    pub simple: bool,
    /// Formula value for simple points, otherwise the oracle value.
    pub norm: f64,
    pub norm_formula: Option<f64>,
    pub oracle: Option<f64>,
    pub oracle_converged: Option<bool>,
    pub bounds: Bounds,
    pub growth_rate: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReportOptions {
    /// Also run the Gram oracle on simple points.
    pub oracle: bool,
    /// Growth rate along `β = α/|α|` (simple points with `α ≠ 0`).
    pub growth: bool,
    pub oracle_degree: u32,
}

impl Default for ReportOptions {
    fn default() -> Self {
        ReportOptions { oracle: false, growth: false, oracle_degree: 8 }
    }
}

/// Norm of the spectral projection for one lattice point of `nf`, in
/// `H_{Φ₂}`: the exact formula for simple points, the Gram oracle on
/// `S = point.alphas` otherwise.
pub fn eigen_projection_norm(
    nf: &NormalFormResult,
    point: &LatticePoint,
    opts: &ReportOptions,
    tol: &Tolerance,
) -> Result<ProjectionNormReport> {
    projection_report(&nf.phi2, point, opts, tol)
}

/// [`eigen_projection_norm`] for an explicit weight.
pub fn projection_report(
    phi: &QuadraticWeight,
    point: &LatticePoint,
    opts: &ReportOptions,
    tol: &Tolerance,
) -> Result<ProjectionNormReport> {
    let tau = tau_bound(phi, &point.alphas)?;
    let (norm_formula, exact) = if point.simple {
        let a = &point.alphas[0];
        (Some(projection_norm_formula(phi, a, tol)?), Some(upper_bound_exact(phi, a, tol)?))
    } else {
        (None, None)
    };
    let (oracle, oracle_converged) = if opts.oracle || !point.simple {
        let r = tau_norm_oracle(phi, &point.alphas, opts.oracle_degree)?;
        (Some(r.value), Some(r.converged))
    } else {
        (None, None)
    };
    let growth = match (opts.growth, point.simple) {
        (true, true) if multiindex::order(&point.alphas[0]) > 0 => {
            let a = &point.alphas[0];
            let k = multiindex::order(a) as f64;
            let beta: Vec<f64> = a.iter().map(|&x| x as f64 / k).collect();
            Some(growth_rate(phi, &beta, tol)?.g)
        }
        _ => None,
    };
    let norm = norm_formula.or(oracle).unwrap_or(f64::NAN);
    Ok(ProjectionNormReport {
        mu: point.mu,
        alphas: point.alphas.clone(),
        simple: point.simple,
        norm,
        norm_formula,
        oracle,
        oracle_converged,
        bounds: Bounds { tau, exact },
        growth_rate: growth,
    })
}

/// Evidence for (or against) orthogonality of all spectral projections.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrthogonalityEvidence {
    pub orthogonal: bool,
    /// Distance between `Λ⁺` and `conj(Λ⁻)` (spectral norm of the projector difference).
    pub manifold_distance: f64,
    /// `‖Φ₂″_xx‖_F / ‖Φ₂″_x̄x‖_F`.
    pub pluriharmonic_size: f64,
    pub by_manifolds: bool,
    pub by_weight: bool,
    /// False when the two (equivalent) criteria disagree numerically.
    pub criteria_agree: bool,
}

pub const ORTHOGONALITY_TOL: f64 = 1e-10;

fn graph_projector(a: &CMatrix) -> Result<CMatrix> {
    let n = a.nrows();
    let mut v = CMatrix::zeros(2 * n, n);
    v.view_mut((0, 0), (n, n)).copy_from(&identity(n));
    v.view_mut((n, 0), (n, n)).copy_from(a);
    let g = matcore::inverse(&(v.adjoint() * &v))?;
    Ok(&v * g * v.adjoint())
}

pub fn orthogonality_test(q: &QuadraticForm, tol: &Tolerance) -> Result<OrthogonalityEvidence> {
    let f = hamilton_map(q);
    let sm = normalform::stable_manifolds(&f, tol)?;
    let nf = normalform::reduce(q, tol)?;
    let manifold_distance =
        matcore::spectral_norm(&(graph_projector(&sm.plus.a)? - graph_projector(&sm.minus.a.map(|z| z.conj()))?));
    let pluriharmonic_size = fro(&nf.phi2.pxx) / fro(&nf.phi2.pxbx);
    let by_manifolds = manifold_distance <= ORTHOGONALITY_TOL;
    let by_weight = pluriharmonic_size <= ORTHOGONALITY_TOL;
    Ok(OrthogonalityEvidence {
        orthogonal: by_manifolds && by_weight,
        manifold_distance,
        pluriharmonic_size,
        by_manifolds,
        by_weight,
        criteria_agree: by_manifolds == by_weight,
    })
}

#[cfg(test)]
mod tests;
