//! Energy-shell resolvents of normal-form operators `(M₁x)·hD_x` on
//! `H_{Φ₁}`, `Φ₁ = ¼|x|²`.
//!
//! Homogeneous polynomials of degree `m` form an invariant subspace `E_m`;
//! in the orthonormal basis `φ_α ∝ x^α/√α!` the operator acts by
//! `φ_α ↦ (h/i)Σ_j M_jj(α_j+½) φ_α + (h/i)Σ_{j≠k} √(α_j(α_k+1)) M_jk φ_{α−e_j+e_k}`.

use std::io::Write;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matcore::{self, c64, CMatrix};
use crate::multiindex::{self, MultiIndex};
use crate::spectral;

#[derive(Debug, Clone, PartialEq)]
pub struct ShellMatrix {
    pub m: u32,
    pub h: f64,
    /// Basis of `E_m` in shell order ([`multiindex::homogeneous`]).
    pub basis: Vec<MultiIndex>,
    pub entries: CMatrix,
}

/// The matrix of `(M₁x)·hD_x + (h/2i) tr M₁` on `E_m`. Entries are computed
/// at `h = 1` and scaled, so `shell_matrix(m, h) = h·shell_matrix(m, 1)`
/// holds exactly.
pub fn shell_matrix(m1: &CMatrix, m: u32, h: f64) -> ShellMatrix {
    let n = m1.nrows();
    let basis = multiindex::homogeneous(n, m);
    let index: std::collections::HashMap<&[u32], usize> =
        basis.iter().enumerate().map(|(i, a)| (a.as_slice(), i)).collect();
    let minus_i = c64(0.0, -1.0);
    let mut s = CMatrix::zeros(basis.len(), basis.len());
    for (col, a) in basis.iter().enumerate() {
        let mut d = c64(0.0, 0.0);
        for j in 0..n {
            d += m1[(j, j)] * (a[j] as f64 + 0.5);
        }
        s[(col, col)] = minus_i * d;
        for j in 0..n {
            if a[j] == 0 {
                continue;
            }
            for k in 0..n {
                if k == j || m1[(j, k)] == c64(0.0, 0.0) {
                    continue;
                }
                let mut b = a.clone();
                b[j] -= 1;
                b[k] += 1;
                let row = index[b.as_slice()];
                s[(row, col)] += minus_i * m1[(j, k)] * ((a[j] as f64) * (a[k] as f64 + 1.0)).sqrt();
            }
        }
    }
    ShellMatrix { m, h, basis, entries: s * c64(h, 0.0) }
}

/// `{μ_α : |α| = m}` with `λ = Spec(M₁)/2`, in shell order.
pub fn shell_spectrum(m1: &CMatrix, m: u32, h: f64) -> Result<Vec<Complex64>> {
    let lambdas: Vec<Complex64> = matcore::eigenvalues(m1)?.into_iter().map(|z| z * 0.5).collect();
    Ok(multiindex::homogeneous(m1.nrows(), m).iter().map(|a| spectral::mu(&lambdas, a, h)).collect())
}

/// The `h = 1` shell matrix in tridiagonal form (`n = 2`; basis `(i, m−i)`).
fn shell_tridiagonal(m1: &CMatrix, m: u32) -> Option<Tridiagonal> {
    if m1.nrows() != 2 {
        return None;
    }
    let minus_i = c64(0.0, -1.0);
    let k = m as usize + 1;
    let d = (0..k).map(|i| minus_i * (m1[(0, 0)] * (i as f64 + 0.5) + m1[(1, 1)] * ((k - 1 - i) as f64 + 0.5))).collect();
    let mf = m as f64;
    let du = (1..k).map(|i| minus_i * m1[(0, 1)] * (i as f64 * (mf - i as f64 + 1.0)).sqrt()).collect();
    let dl = (0..k - 1).map(|i| minus_i * m1[(1, 0)] * ((mf - i as f64) * (i as f64 + 1.0)).sqrt()).collect();
    Some(Tridiagonal { dl, d, du })
}

/// Shells up to this dimension use a dense SVD.
const DENSE_LIMIT: usize = 64;

/// `σ_min` below `SATURATION·‖A‖` is not resolved in double precision.
pub const SATURATION: f64 = 64.0 * f64::EPSILON;

/// `‖A^{−1}‖`, clamped at `1/(SATURATION·‖A‖)` (then `saturated` is set).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InverseNorm {
    pub value: f64,
    pub saturated: bool,
}

/// `‖(Q_m − z)^{−1}‖ = 1/σ_min(Q_m − z)`; `+∞` when `z` is an eigenvalue.
///
/// Evaluated as `h^{−1}‖(Q_m(1) − z/h)^{−1}‖` so the semiclassical scaling
/// holds to rounding in the final division. A saturated value is a lower
/// bound for the true norm.
pub fn restricted_resolvent(m1: &CMatrix, m: u32, h: f64, z: Complex64) -> Result<f64> {
    Ok(restricted_resolvent_detail(m1, m, h, z)?.value)
}

pub fn restricted_resolvent_detail(m1: &CMatrix, m: u32, h: f64, z: Complex64) -> Result<InverseNorm> {
    if !(h > 0.0) {
        return Err(Error::Input(format!("h = {h} must be positive")));
    }
    let w = z / h;
    let r = match shell_tridiagonal(m1, m) {
        Some(mut t) if t.d.len() > DENSE_LIMIT => {
            t.d.iter_mut().for_each(|d| *d -= w);
            let scale = t.fro();
            t.smallest_singular(scale)
        }
        _ => {
            let s = shell_matrix(m1, m, 1.0);
            let k = s.entries.nrows();
            inverse_norm(&(&s.entries - CMatrix::identity(k, k) * w))?
        }
    };
    Ok(InverseNorm { value: r.value / h, saturated: r.saturated })
}

/// `‖A^{−1}‖` for a square matrix: dense SVD for small `A`, bisection on
/// the Golub–Kahan form for tridiagonal `A`, otherwise Lanczos on
/// `(A*A)^{−1}` through LU solves.
pub fn inverse_norm(a: &CMatrix) -> Result<InverseNorm> {
    let k = a.nrows();
    let exact_zero = InverseNorm { value: f64::INFINITY, saturated: false };
    if k <= DENSE_LIMIT {
        let sv = matcore::singular_values(a);
        let smin = sv.iter().copied().fold(f64::INFINITY, f64::min);
        let smax = sv.iter().copied().fold(0.0, f64::max);
        if smin == 0.0 && smax == 0.0 {
            return Ok(exact_zero);
        }
        return Ok(clamp(1.0 / smin, smax));
    }
    let scale = matcore::fro(a);
    if let Some(t) = Tridiagonal::from_matrix(a) {
        return Ok(t.smallest_singular(scale));
    }
    let lu = a.clone().lu();
    let lua = a.adjoint().lu();
    if lu.u().diagonal().iter().any(|d| *d == c64(0.0, 0.0)) {
        return Ok(exact_zero);
    }
    let solve = |lu: &nalgebra::LU<Complex64, nalgebra::Dyn, nalgebra::Dyn>, x: &[Complex64]| -> Vec<Complex64> {
        let v = matcore::CVector::from_column_slice(x);
        lu.solve(&v).map(|v| v.as_slice().to_vec()).unwrap_or_else(|| vec![c64(f64::INFINITY, 0.0); x.len()])
    };
    Ok(clamp(lanczos_max(k, |x| solve(&lua, &solve(&lu, x)))?.sqrt(), scale))
}

fn clamp(value: f64, norm_a: f64) -> InverseNorm {
    let cap = 1.0 / (SATURATION * norm_a);
    if value.is_nan() || value >= cap {
        InverseNorm { value: cap, saturated: true }
    } else {
        InverseNorm { value, saturated: false }
    }
}

/// Largest eigenvalue of a Hermitian positive operator by Lanczos with full
/// reorthogonalization.
fn lanczos_max(k: usize, mut apply: impl FnMut(&[Complex64]) -> Vec<Complex64>) -> Result<f64> {
    let dot = |a: &[Complex64], b: &[Complex64]| a.iter().zip(b).map(|(x, y)| x.conj() * y).sum::<Complex64>();
    let norm = |v: &[Complex64]| v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let mut v0: Vec<Complex64> = (0..k).map(|i| Complex64::from_polar(1.0, 0.7 * i as f64)).collect();
    let n0 = norm(&v0);
    v0.iter_mut().for_each(|z| *z /= n0);
    let mut basis = vec![v0];
    let (mut alpha, mut beta): (Vec<f64>, Vec<f64>) = (vec![], vec![]);
    let mut prev = 0.0;
    let steps = k.min(150);
    for j in 0..steps {
        let mut w = apply(&basis[j]);
        if w.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Ok(f64::INFINITY);
        }
        alpha.push(dot(&basis[j], &w).re);
        for _ in 0..2 {
            for v in &basis {
                let c = dot(v, &w);
                w.iter_mut().zip(v).for_each(|(x, y)| *x -= c * y);
            }
        }
        let t = CMatrix::from_fn(j + 1, j + 1, |r, c| {
            if r == c {
                c64(alpha[r], 0.0)
            } else if r == c + 1 {
                c64(beta[c], 0.0)
            } else if c == r + 1 {
                c64(beta[r], 0.0)
            } else {
                c64(0.0, 0.0)
            }
        });
        let ritz = matcore::hermitian_eigen(&t).0.last().copied().unwrap_or(0.0);
        let b = norm(&w);
        if (j >= 2 && (ritz - prev).abs() <= 1e-14 * ritz) || b <= 1e-14 * ritz || j + 1 == steps {
            if j + 1 == steps && (ritz - prev).abs() > 1e-10 * ritz && steps < k {
                return Err(Error::NotConverged("Lanczos for the smallest singular value".into()));
            }
            return Ok(ritz);
        }
        prev = ritz;
        beta.push(b);
        basis.push(w.into_iter().map(|z| z / b).collect());
    }
    Ok(prev)
}

/// Complex tridiagonal matrix `(sub, diag, sup)`.
#[derive(Debug, Clone)]
struct Tridiagonal {
    dl: Vec<Complex64>,
    d: Vec<Complex64>,
    du: Vec<Complex64>,
}

impl Tridiagonal {
    fn fro(&self) -> f64 {
        self.dl.iter().chain(&self.d).chain(&self.du).map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    fn from_matrix(a: &CMatrix) -> Option<Self> {
        let k = a.nrows();
        for j in 0..k {
            for i in 0..k {
                if (i + 1 < j || j + 1 < i) && a[(i, j)] != c64(0.0, 0.0) {
                    return None;
                }
            }
        }
        Some(Tridiagonal {
            dl: (0..k - 1).map(|i| a[(i + 1, i)]).collect(),
            d: (0..k).map(|i| a[(i, i)]).collect(),
            du: (0..k - 1).map(|i| a[(i, i + 1)]).collect(),
        })
    }

    /// `‖A^{−1}‖` from `σ_min(A)`, found by bisection on inertia counts of
    /// `H = [[0, A], [A*, 0]]` (eigenvalues `±σ_i`), ordered so `H` is banded
    /// with half-bandwidth 3: `#{σ_i < s} = neg(H − sI) − k`.
    fn smallest_singular(&self, norm_a: f64) -> InverseNorm {
        let k = self.d.len();
        // lower band of H: rows 2i ↔ row i of A, rows 2j+1 ↔ column j
        let n = 2 * k;
        let mut band = vec![[c64(0.0, 0.0); 4]; n];
        let mut put = |i: usize, j: usize, v: Complex64| {
            // H[2i, 2j+1] = A[i, j]; store at the lower position
            let (r, c) = (2 * i, 2 * j + 1);
            if r > c {
                band[r][r - c] = v;
            } else {
                band[c][c - r] = v.conj();
            }
        };
        for i in 0..k {
            put(i, i, self.d[i]);
            if i + 1 < k {
                put(i, i + 1, self.du[i]);
                put(i + 1, i, self.dl[i]);
            }
        }
        let below = |s: f64| negative_count(&band, s).saturating_sub(k);
        let floor = SATURATION * norm_a;
        if below(floor) > 0 {
            return InverseNorm { value: 1.0 / floor, saturated: true };
        }
        let (mut lo, mut hi) = (floor, norm_a.max(floor));
        while below(hi) == 0 {
            hi *= 2.0;
        }
        while hi - lo > 1e-10 * hi {
            let mid = 0.5 * (lo + hi);
            if below(mid) > 0 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        let bisected = 0.5 * (lo + hi);
        // The unpivoted LDL* counts can be off in strongly non-normal cases;
        // refine with inverse iteration at the bisected shift and take
        // σ = ‖Av‖/‖v‖ for the resulting right singular vector.
        let sigma = self.refine(&band, bisected).filter(|r| (r - bisected).abs() <= 1e-3 * bisected);
        let sigma = sigma.unwrap_or(bisected);
        if sigma <= floor {
            return InverseNorm { value: 1.0 / floor, saturated: true };
        }
        InverseNorm { value: 1.0 / sigma, saturated: false }
    }

    fn refine(&self, band: &[[Complex64; 4]], shift: f64) -> Option<f64> {
        let k = self.d.len();
        let n = band.len();
        let lu = BandLu::new(n, 3, |r, c| {
            let v = if r >= c { band[r][r - c] } else { band[c][c - r].conj() };
            if r == c {
                v - shift
            } else {
                v
            }
        })?;
        let mut x: Vec<Complex64> = (0..n).map(|i| Complex64::from_polar(1.0, 0.7 * i as f64)).collect();
        let mut best = f64::INFINITY;
        for _ in 0..4 {
            x = lu.solve(&x);
            let nx = x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if !nx.is_finite() || nx == 0.0 {
                return None;
            }
            x.iter_mut().for_each(|z| *z /= nx);
            let v: Vec<Complex64> = (0..k).map(|j| x[2 * j + 1]).collect();
            let nv = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if nv > 0.0 {
                best = best.min(self.apply_norm(&v) / nv);
            }
        }
        best.is_finite().then_some(best)
    }

    fn apply_norm(&self, v: &[Complex64]) -> f64 {
        let k = self.d.len();
        (0..k)
            .map(|i| {
                let mut s = self.d[i] * v[i];
                if i + 1 < k {
                    s += self.du[i] * v[i + 1];
                }
                if i > 0 {
                    s += self.dl[i - 1] * v[i - 1];
                }
                s.norm_sqr()
            })
            .sum::<f64>()
            .sqrt()
    }
}

/// LU with partial pivoting for a band matrix with `kl = ku = b`.
struct BandLu {
    n: usize,
    b: usize,
    /// Row `r` holds columns `r − b ..= r + 2b`.
    rows: Vec<Vec<Complex64>>,
    piv: Vec<usize>,
}

impl BandLu {
    fn new(n: usize, b: usize, entry: impl Fn(usize, usize) -> Complex64) -> Option<Self> {
        let w = 3 * b + 1;
        let mut rows = vec![vec![c64(0.0, 0.0); w]; n];
        for r in 0..n {
            for c in r.saturating_sub(b)..=(r + b).min(n - 1) {
                rows[r][c + b - r] = entry(r, c);
            }
        }
        let at = |r: usize, c: usize| c + b - r;
        let mut piv = vec![0; n];
        for j in 0..n {
            let last = (j + b).min(n - 1);
            let p = (j..=last).max_by(|&x, &y| rows[x][at(x, j)].norm().total_cmp(&rows[y][at(y, j)].norm()))?;
            piv[j] = p;
            let cmax = (j + 2 * b).min(n - 1);
            if p != j {
                for c in j..=cmax {
                    let (a, bb) = (rows[j][at(j, c)], rows[p][at(p, c)]);
                    rows[j][at(j, c)] = bb;
                    rows[p][at(p, c)] = a;
                }
            }
            let d = rows[j][at(j, j)];
            if d == c64(0.0, 0.0) {
                return None;
            }
            for r in j + 1..=last {
                let l = rows[r][at(r, j)] / d;
                rows[r][at(r, j)] = l;
                for c in j + 1..=cmax {
                    let u = rows[j][at(j, c)];
                    rows[r][at(r, c)] -= l * u;
                }
            }
        }
        Some(BandLu { n, b, rows, piv })
    }

    fn solve(&self, rhs: &[Complex64]) -> Vec<Complex64> {
        let (n, b) = (self.n, self.b);
        let at = |r: usize, c: usize| c + b - r;
        let mut x = rhs.to_vec();
        for j in 0..n {
            x.swap(j, self.piv[j]);
            let xj = x[j];
            for r in j + 1..=(j + b).min(n - 1) {
                x[r] -= self.rows[r][at(r, j)] * xj;
            }
        }
        for j in (0..n).rev() {
            let mut s = x[j];
            for c in j + 1..=(j + 2 * b).min(n - 1) {
                s -= self.rows[j][at(j, c)] * x[c];
            }
            x[j] = s / self.rows[j][at(j, j)];
        }
        x
    }
}

/// Number of negative pivots of `LDL*` for the Hermitian band matrix
/// (`band[i][t] = H[i, i−t]`) shifted by `−s`: its count of eigenvalues below `s`.
fn negative_count(band: &[[Complex64; 4]], s: f64) -> usize {
    let n = band.len();
    let mut w: Vec<[Complex64; 4]> = band.to_vec();
    let tiny = f64::MIN_POSITIVE.sqrt();
    let mut count = 0;
    for i in 0..n {
        let mut d = w[i][0].re - s;
        if d == 0.0 {
            d = tiny;
        }
        if d < 0.0 {
            count += 1;
        }
        let last = (i + 3).min(n - 1);
        let col: Vec<Complex64> = (i + 1..=last).map(|r| w[r][r - i]).collect();
        for (a, r) in (i + 1..=last).enumerate() {
            for (b, c) in (i + 1..=r).enumerate() {
                w[r][r - c] -= col[a] * col[b].conj() / d;
            }
        }
    }
    count
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub m: u32,
    pub h: f64,
    /// `m·h`.
    pub energy: f64,
    pub resolvent_norm: f64,
    /// `1/dist(z, Spec(Q_m))`: the norm for a normal operator with the same shell spectrum.
    pub baseline_norm: f64,
    /// `resolvent_norm` is only a lower bound (double-precision floor).
    pub saturated: bool,
}

/// Restricted resolvent norms for `m = 0..=m_max` and each `h`, in
/// `(h, m)` order.
pub fn resolvent_sweep(m1: &CMatrix, z: Complex64, h_list: &[f64], m_max: u32) -> Result<Vec<SweepRow>> {
    let mut rows = Vec::new();
    for &h in h_list {
        rows.extend(sweep_one(m1, z, h, m_max)?);
    }
    Ok(rows)
}

/// [`resolvent_sweep`] with `m_max = ⌈e_max/h⌉` for each `h`.
pub fn resolvent_sweep_energy(m1: &CMatrix, z: Complex64, h_list: &[f64], e_max: f64) -> Result<Vec<SweepRow>> {
    let mut rows = Vec::new();
    for &h in h_list {
        rows.extend(sweep_one(m1, z, h, (e_max / h).ceil() as u32)?);
    }
    Ok(rows)
}

fn sweep_one(m1: &CMatrix, z: Complex64, h: f64, m_max: u32) -> Result<Vec<SweepRow>> {
    if !(h > 0.0) {
        return Err(Error::Input(format!("h = {h} must be positive")));
    }
    let lambdas: Vec<Complex64> = matcore::eigenvalues(m1)?.into_iter().map(|w| w * 0.5).collect();
    (0..=m_max)
        .map(|m| {
            let dist = multiindex::homogeneous(m1.nrows(), m)
                .iter()
                .map(|a| (spectral::mu(&lambdas, a, h) - z).norm())
                .fold(f64::INFINITY, f64::min);
            let r = restricted_resolvent_detail(m1, m, h, z)?;
            Ok(SweepRow {
                m,
                h,
                energy: m as f64 * h,
                resolvent_norm: r.value,
                baseline_norm: 1.0 / dist,
                saturated: r.saturated,
            })
        })
        .collect()
}

/// Row with the largest resolvent norm at step `h`.
/// Row of largest norm for `h`; the first one on ties (saturated plateaus).
pub fn peak(rows: &[SweepRow], h: f64) -> Option<SweepRow> {
    rows.iter().filter(|r| r.h == h).copied().fold(None, |best: Option<SweepRow>, r| match best {
        Some(b) if b.resolvent_norm >= r.resolvent_norm => Some(b),
        _ => Some(r),
    })
}

/// CSV with columns `m, h, energy, resolvent_norm, baseline_norm`.
pub fn write_csv<W: Write>(rows: &[SweepRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let io = |e: csv::Error| Error::Input(e.to_string());
    w.write_record(["m", "h", "energy", "resolvent_norm", "baseline_norm"]).map_err(io)?;
    for r in rows {
        w.write_record([
            r.m.to_string(),
            crate::io::fmt_real(r.h),
            crate::io::fmt_real(r.energy),
            crate::io::fmt_real(r.resolvent_norm),
            crate::io::fmt_real(r.baseline_norm),
        ])
        .map_err(io)?;
    }
    w.flush().map_err(|e| Error::Input(e.to_string()))
}

/// Long format: `h, energy, series, value` with series `resolvent` / `baseline`.
pub fn write_plot_data<W: Write>(rows: &[SweepRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let io = |e: csv::Error| Error::Input(e.to_string());
    w.write_record(["h", "energy", "series", "value"]).map_err(io)?;
    for r in rows {
        for (name, v) in [("resolvent", r.resolvent_norm), ("baseline", r.baseline_norm)] {
            w.write_record([crate::io::fmt_real(r.h), crate::io::fmt_real(r.energy), name.into(), crate::io::fmt_real(v)])
                .map_err(io)?;
        }
    }
    w.flush().map_err(|e| Error::Input(e.to_string()))
}
