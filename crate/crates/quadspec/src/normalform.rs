//! Reduction of a quadratic symbol to the normal form `(Mx)·ξ` acting on a
//! weighted space `H_Φ₂`.
//!
//! Pipeline: stable manifolds `Λ±` as graphs `ξ = A±x` → a real canonical
//! map `κ` straightening `Λ⁻` to `{ξ = −ix}` → the complex map `κ_{A₊}`
//! sending `Λ⁺ ↦ {ξ = 0}`, `Λ⁻ ↦ {x = 0}` → Jordan reduction of the
//! resulting block `M₁` by `G` → the weight `Φ₂(x) = Φ₁(Gx)`.

use std::collections::BTreeSet;

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matcore::{
    self, block2, blocks, c64, fro, from_real, identity, imag_part, real_part, CMatrix, CVector, Region, Schur,
    Tolerance, I,
};
use crate::symplectic::{self, hamilton_map, uhp_count, Classification, HamiltonMap, QuadraticForm};
use crate::weights::QuadraticWeight;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Positive,
    Negative,
}

/// `{(y, Ay)}` with `A` complex symmetric.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LagrangianGraph {
    #[serde(rename = "A", with = "crate::io::cmat")]
    pub a: CMatrix,
    pub sign: Sign,
}

impl LagrangianGraph {
    /// `[I; A]`.
    pub fn basis(&self) -> CMatrix {
        let n = self.a.nrows();
        let mut v = CMatrix::zeros(2 * n, n);
        v.view_mut((0, 0), (n, n)).copy_from(&identity(n));
        v.view_mut((n, 0), (n, n)).copy_from(&self.a);
        v
    }
}

/// Least eigenvalue of the real symmetric matrix `Im A`.
fn min_eig_im(a: &CMatrix) -> f64 {
    let im = imag_part(a);
    matcore::real_symmetric_eigenvalues(&((&im + im.transpose()) * 0.5))[0]
}

fn graph_from_basis(v: &CMatrix, sign: Sign, tol: &Tolerance) -> Result<LagrangianGraph> {
    let n = v.ncols();
    let x = v.rows(0, n).into_owned();
    let xi = v.rows(n, n).into_owned();
    let scale = matcore::spectral_norm(v).max(f64::MIN_POSITIVE);
    if matcore::smallest_singular(&x) <= tol.rank_tol * scale {
        return Err(Error::GraphSingular);
    }
    let a = xi * matcore::inverse(&x)?;
    let res = matcore::symmetric_residual(&a);
    if res > tol.sym_tol.max(1e-10) {
        return Err(Error::NotSymmetric(res));
    }
    let a = matcore::symmetrize(&a);
    let m = min_eig_im(&a);
    let thr = tol.rank_tol * fro(&a).max(1.0);
    match sign {
        Sign::Positive if m <= thr => Err(Error::NotPositive(m)),
        Sign::Negative if min_eig_im(&(-&a)) <= thr => Err(Error::NotNegative(min_eig_im(&(-&a)))),
        _ => Ok(LagrangianGraph { a, sign }),
    }
}

/// `Λ⁺` and `Λ⁻` with the orthonormal invariant-subspace bases they came from.
#[derive(Debug, Clone)]
pub struct StableManifolds {
    pub plus: LagrangianGraph,
    pub minus: LagrangianGraph,
    pub basis_plus: CMatrix,
    pub basis_minus: CMatrix,
}

pub fn stable_manifolds(f: &HamiltonMap, tol: &Tolerance) -> Result<StableManifolds> {
    let n = f.n();
    let (up, down) = uhp_count(f, tol)?;
    if up != n || down != n {
        return Err(Error::NotCovered(format!("{up} eigenvalues above and {down} below the real axis")));
    }
    let basis_plus = matcore::invariant_subspace(&f.f, Region::UpperHalfPlane, tol)?;
    let basis_minus = matcore::invariant_subspace(&f.f, Region::LowerHalfPlane, tol)?;
    Ok(StableManifolds {
        plus: graph_from_basis(&basis_plus, Sign::Positive, tol)?,
        minus: graph_from_basis(&basis_minus, Sign::Negative, tol)?,
        basis_plus,
        basis_minus,
    })
}

fn real_sym_pow(s: &DMatrix<f64>, p: f64) -> DMatrix<f64> {
    let e = SymmetricEigen::new((s + s.transpose()) * 0.5);
    let d = DMatrix::from_diagonal(&e.eigenvalues.map(|l| l.powf(p)));
    &e.eigenvectors * d * e.eigenvectors.transpose()
}

/// Real symplectic `κ = [[S^{1/2}, 0], [−S^{−1/2} Re A₋, S^{−1/2}]]`,
/// `S = −Im A₋`, with `κ(Λ⁻) = {(y, −iy)}`.
pub fn straighten_kappa(a_minus: &LagrangianGraph, tol: &Tolerance) -> Result<CMatrix> {
    let s = -imag_part(&a_minus.a);
    let s = (&s + s.transpose()) * 0.5;
    let lo = matcore::real_symmetric_eigenvalues(&s)[0];
    if lo <= tol.rank_tol * s.norm().max(1.0) {
        return Err(Error::NotNegative(-lo));
    }
    let half = real_sym_pow(&s, 0.5);
    let mhalf = real_sym_pow(&s, -0.5);
    let re = real_part(&a_minus.a);
    let n = s.nrows();
    Ok(block2(
        &from_real(&half),
        &CMatrix::zeros(n, n),
        &from_real(&(-(&mhalf * re))),
        &from_real(&mhalf),
    ))
}

/// `C₊ = (1 − iA₊)^{−1}(1 + iA₊)`.
pub fn cplus_from_aplus(a_plus: &CMatrix, tol: &Tolerance) -> Result<CMatrix> {
    let m = min_eig_im(a_plus);
    if m <= tol.rank_tol * fro(a_plus).max(1.0) {
        return Err(Error::NotPositive(m));
    }
    let n = a_plus.nrows();
    let id = identity(n);
    let c = matcore::solve(&(&id - a_plus * I), &(&id + a_plus * I))?;
    Ok(matcore::symmetrize(&c))
}

/// `A₊ = i(1 + C₊)^{−1}(1 − C₊)`.
pub fn aplus_from_cplus(c_plus: &CMatrix, tol: &Tolerance) -> Result<CMatrix> {
    let n = c_plus.nrows();
    let id = identity(n);
    let p = &id + c_plus;
    if matcore::smallest_singular(&p) <= tol.rank_tol {
        return Err(Error::SingularPencil);
    }
    let a = matcore::solve(&p, &(&id - c_plus))? * I;
    Ok(matcore::symmetrize(&a))
}

/// Graph matrix of `κ(Λ_F)` from the blocks `[[A, B], [C, D]]` of `κ^{−1}`:
/// `F̃ = (D − FB)^{−1}(FA − C)`.
pub fn gaussian_transport(f: &CMatrix, kappa_inv: &CMatrix, tol: &Tolerance) -> Result<CMatrix> {
    let (a, b, c, d) = blocks(kappa_inv);
    let den = &d - f * &b;
    if matcore::smallest_singular(&den) <= tol.rank_tol * matcore::spectral_norm(&den).max(1.0) {
        return Err(Error::DegenerateTransport);
    }
    let out = matcore::solve(&den, &(f * a - c))?;
    let res = matcore::symmetric_residual(&out);
    if res > 1e-10 {
        return Err(Error::NotSymmetric(res));
    }
    Ok(matcore::symmetrize(&out))
}

/// `κ_{A₊} = [[I, −iI], [−(1 − iA₊)^{−1}A₊, (1 − iA₊)^{−1}]]`.
pub fn kappa_a(a_plus: &CMatrix) -> Result<CMatrix> {
    let n = a_plus.nrows();
    let id = identity(n);
    let r = matcore::inverse(&(&id - a_plus * I))?;
    Ok(block2(&id, &(-&id * I), &(-(&r * a_plus)), &r))
}

/// `κ_{A₊}^{−1} = [[(1 − iA₊)^{−1}, iI], [A₊(1 − iA₊)^{−1}, I]]`.
pub fn kappa_a_inv(a_plus: &CMatrix) -> Result<CMatrix> {
    let n = a_plus.nrows();
    let id = identity(n);
    let r = matcore::inverse(&(&id - a_plus * I))?;
    Ok(block2(&r, &(&id * I), &(a_plus * &r), &id))
}

/// `Φ″_x̄x = ¼G*G`, `Φ″_xx = −¼GᵗC₊G`, i.e. `Φ(x) = ¼|Gx|² − ¼Re(C₊Gx, Gx)`.
pub fn weight_from_gc(g: &CMatrix, c_plus: &CMatrix) -> QuadraticWeight {
    QuadraticWeight {
        n: g.nrows(),
        pxx: matcore::symmetrize(&(g.transpose() * c_plus * g).scale(-0.25)),
        pxbx: matcore::hermitize(&(g.adjoint() * g).scale(0.25)),
    }
}

/// `G = 2(Φ″_x̄x)^{1/2}`, `C₊ = −4G^{−t}Φ″_xx G^{−1}`.
pub fn gc_from_weight(phi: &QuadraticWeight, tol: &Tolerance) -> Result<(CMatrix, CMatrix)> {
    let conv = phi.convexity();
    if !conv.strictly_convex {
        return Err(Error::NotConvex(conv.cl));
    }
    let (sqrt, inv_sqrt) = matcore::herm_sqrt_inv(&phi.pxbx, tol).map_err(|_| Error::NotConvex(conv.cl))?;
    let g = sqrt.scale(2.0);
    let g_inv = inv_sqrt.scale(0.5);
    let c = matcore::symmetrize(&(g_inv.transpose() * &phi.pxx * &g_inv).scale(-4.0));
    Ok((g, c))
}

/// Jordan data of `M₁`: `G^{−1}M₁G = M`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct JordanForm {
    #[serde(rename = "M", with = "crate::io::cmat")]
    pub m: CMatrix,
    #[serde(rename = "G", with = "crate::io::cmat")]
    pub g: CMatrix,
    /// Superdiagonal of `M`, each 0 or 1.
    pub gammas: Vec<u8>,
    /// `(start, length)` of every Jordan block.
    pub blocks: Vec<(usize, usize)>,
    /// Relative residual `‖G^{−1}M₁G − M‖ / max(1, ‖M₁‖)`.
    pub residual: f64,
    /// Cluster partition changes under a tenfold change of radius, or the
    /// residual exceeds `1e-8`.
    pub ill_conditioned: bool,
}

/// Eigenvalue clusters: connected components at distance `radius`.
fn clusters(ev: &[Complex64], radius: f64) -> Vec<Vec<usize>> {
    let k = ev.len();
    let mut parent: Vec<usize> = (0..k).collect();
    fn root(p: &mut [usize], mut i: usize) -> usize {
        while p[i] != i {
            p[i] = p[p[i]];
            i = p[i];
        }
        i
    }
    for i in 0..k {
        for j in i + 1..k {
            if (ev[i] - ev[j]).norm() <= radius {
                let (a, b) = (root(&mut parent, i), root(&mut parent, j));
                parent[a] = b;
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut roots: Vec<usize> = Vec::new();
    for i in 0..k {
        let r = root(&mut parent, i);
        match roots.iter().position(|&x| x == r) {
            Some(p) => groups[p].push(i),
            None => {
                roots.push(r);
                groups.push(vec![i]);
            }
        }
    }
    groups
}

fn partition_signature(ev: &[Complex64], radius: f64) -> BTreeSet<Vec<usize>> {
    clusters(ev, radius).into_iter().collect()
}

fn mean(ev: &[Complex64], idx: &[usize]) -> Complex64 {
    idx.iter().map(|&i| ev[i]).sum::<Complex64>() / idx.len() as f64
}

/// Lexicographic `(Re, Im)` order, treating real parts within `eps` as equal.
fn lex(a: Complex64, b: Complex64, eps: f64) -> std::cmp::Ordering {
    if (a.re - b.re).abs() > eps {
        a.re.total_cmp(&b.re)
    } else {
        a.im.total_cmp(&b.im)
    }
}

/// Orthonormal basis of the column span, dropping directions below `rel`.
fn orth(u: &CMatrix, rel: f64) -> CMatrix {
    if u.ncols() == 0 {
        return CMatrix::zeros(u.nrows(), 0);
    }
    let svd = u.clone().svd(true, false);
    let w = svd.u.expect("requested");
    let smax = svd.singular_values.max();
    let keep: Vec<usize> = (0..svd.singular_values.len()).filter(|&i| svd.singular_values[i] > rel * smax.max(1e-300)).collect();
    CMatrix::from_fn(u.nrows(), keep.len(), |r, c| w[(r, keep[c])])
}

fn hstack(parts: &[CMatrix], rows: usize) -> CMatrix {
    let cols: usize = parts.iter().map(|p| p.ncols()).sum();
    let mut out = CMatrix::zeros(rows, cols);
    let mut c = 0;
    for p in parts {
        out.view_mut((0, c), (rows, p.ncols())).copy_from(p);
        c += p.ncols();
    }
    out
}

/// Jordan chains of the nearly nilpotent `N` (staircase rank deduction).
/// Returns column blocks `[N^{ℓ−1}v, …, v]`, longest chains first.
fn chains(nmat: &CMatrix, radius: f64, scale: f64) -> Vec<CMatrix> {
    let k = nmat.nrows();
    let mut kernels: Vec<CMatrix> = vec![CMatrix::zeros(k, 0)];
    let mut power = identity(k);
    for j in 1..=k {
        power = nmat * power;
        let thr = radius.sqrt() * scale.powi(j as i32);
        let ker = matcore::kernel_abs(&power, thr);
        let full = ker.ncols() >= k;
        kernels.push(ker);
        if full {
            break;
        }
    }
    let depth = kernels.len() - 1;
    let dims: Vec<usize> = kernels.iter().map(|m| m.ncols()).collect();
    // number of chains of length ≥ ℓ
    let at_least = |l: usize| if l > depth { 0 } else { dims[l] - dims[l - 1] };
    let mut tops: Vec<(CVector, usize)> = Vec::new();
    for l in (1..=depth).rev() {
        let new = at_least(l).saturating_sub(at_least(l + 1));
        if new == 0 {
            continue;
        }
        let mut parts = vec![kernels[l - 1].clone()];
        for (v, len) in &tops {
            let mut w = v.clone();
            for _ in 0..(len - l) {
                w = nmat * w;
            }
            parts.push(CMatrix::from_column_slice(k, 1, w.as_slice()));
        }
        let span = orth(&hstack(&parts, k), 1e-10);
        let cand = &kernels[l] - &span * (span.adjoint() * &kernels[l]);
        let svd = cand.svd(true, false);
        let u = svd.u.expect("requested");
        let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
        order.sort_by(|&a, &b| svd.singular_values[b].total_cmp(&svd.singular_values[a]));
        for &i in order.iter().take(new) {
            tops.push((u.column(i).into_owned(), l));
        }
    }
    tops.iter()
        .map(|(v, len)| {
            let mut cols = vec![v.clone()];
            for _ in 1..*len {
                let next = nmat * cols.last().unwrap();
                cols.push(next);
            }
            cols.reverse();
            // unit eigenvector; the rest of the chain follows so M keeps 1's
            let s = 1.0 / cols[0].norm().max(f64::MIN_POSITIVE);
            let cols: Vec<CVector> = cols.into_iter().map(|c| c * c64(s, 0.0)).collect();
            CMatrix::from_columns(&cols)
        })
        .collect()
}

/// Unit eigenvector of `a` for the (simple) eigenvalue `lambda`.
fn eigenvector(a: &CMatrix, lambda: Complex64) -> CVector {
    let n = a.nrows();
    let shifted = a - identity(n) * lambda;
    let svd = shifted.svd(false, true);
    let vt = svd.v_t.expect("requested");
    let i = svd.singular_values.imin();
    vt.row(i).adjoint().into_owned()
}

/// Jordan reduction of `M₁`. Eigenvalues within
/// `max(cluster_tol, 8√ε_mach‖M₁‖)` are grouped; a clustered group is split
/// into chains by staircase rank deduction on the reordered Schur block.
pub fn jordan_reduce(m1: &CMatrix, tol: &Tolerance) -> Result<JordanForm> {
    let n = m1.nrows();
    if m1.ncols() != n || n == 0 {
        return Err(Error::Dimension("M1 must be square".into()));
    }
    let schur = Schur::new(m1)?;
    let ev = schur.eigenvalues();
    let scale = fro(m1).max(1.0);
    let radius = tol.cluster_tol.max(8.0 * f64::EPSILON.sqrt() * scale);
    let mut groups = clusters(&ev, radius);
    groups.sort_by(|a, b| lex(mean(&ev, a), mean(&ev, b), radius));
    let unstable = partition_signature(&ev, radius * 10.0) != partition_signature(&ev, radius)
        || partition_signature(&ev, radius / 10.0) != partition_signature(&ev, radius);

    let mut gcols: Vec<CMatrix> = Vec::new();
    let mut diag_vals: Vec<Complex64> = Vec::new();
    let mut blocks_out: Vec<(usize, usize)> = Vec::new();
    for grp in &groups {
        let lam = mean(&ev, grp);
        if grp.len() == 1 {
            let v = eigenvector(m1, ev[grp[0]]);
            blocks_out.push((diag_vals.len(), 1));
            diag_vals.push(ev[grp[0]]);
            gcols.push(CMatrix::from_column_slice(n, 1, v.as_slice()));
            continue;
        }
        let mut s = schur.clone();
        let k = s.reorder(|z| (z - lam).norm() <= radius * grp.len() as f64);
        let z1 = s.leading_basis(k);
        let t11 = s.t.view((0, 0), (k, k)).into_owned();
        let nmat = &t11 - identity(k) * lam;
        for chain in chains(&nmat, radius, scale) {
            let len = chain.ncols();
            blocks_out.push((diag_vals.len(), len));
            diag_vals.extend(std::iter::repeat(lam).take(len));
            gcols.push(&z1 * chain);
        }
    }
    let g = hstack(&gcols, n);
    if g.ncols() != n {
        return Err(Error::NotConverged(format!("Jordan chains span {} of {n} dimensions", g.ncols())));
    }
    let mut m = matcore::diag(&diag_vals);
    let mut gammas = vec![0u8; n.saturating_sub(1)];
    for &(start, len) in &blocks_out {
        for j in start..start + len - 1 {
            m[(j, j + 1)] = c64(1.0, 0.0);
            gammas[j] = 1;
        }
    }
    let recon = matcore::solve(&g, &(m1 * &g))?;
    let residual = fro(&(recon - &m)) / scale;
    Ok(JordanForm { m, g, gammas, blocks: blocks_out, residual, ill_conditioned: unstable || residual > 1e-8 })
}

/// Jordan data for a user-supplied `G`: `M = G^{−1}M₁G` must already be
/// upper bidiagonal with a 0/1 superdiagonal.
pub fn jordan_from_g(m1: &CMatrix, g: &CMatrix, tol: &Tolerance) -> Result<JordanForm> {
    let n = m1.nrows();
    if g.shape() != (n, n) {
        return Err(Error::Dimension("G must match M1".into()));
    }
    let mraw = matcore::solve(g, &(m1 * g))?;
    let scale = fro(m1).max(1.0);
    let mut m = CMatrix::zeros(n, n);
    let mut gammas = vec![0u8; n.saturating_sub(1)];
    let mut blocks_out = Vec::new();
    let mut start = 0;
    for j in 0..n {
        m[(j, j)] = mraw[(j, j)];
        if j + 1 < n && (mraw[(j, j + 1)] - c64(1.0, 0.0)).norm() < 1e-6 * scale {
            m[(j, j + 1)] = c64(1.0, 0.0);
            gammas[j] = 1;
        } else {
            blocks_out.push((start, j + 1 - start));
            start = j + 1;
        }
    }
    let residual = fro(&(mraw - &m)) / scale;
    if residual > tol.cluster_tol.max(1e-8) {
        return Err(Error::Input(format!("G does not reduce M1 to Jordan form (residual {residual:e})")));
    }
    Ok(JordanForm { m, g: g.clone(), gammas, blocks: blocks_out, residual, ill_conditioned: false })
}

/// Full output of [`reduce`].
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NormalFormResult {
    pub classification: Classification,
    /// Eigenvalues of `F` in the upper half-plane, `λ_j = M_jj / 2`.
    #[serde(with = "crate::io::cvec")]
    pub lambdas: Vec<Complex64>,
    #[serde(rename = "M", with = "crate::io::cmat")]
    pub m: CMatrix,
    pub gammas: Vec<u8>,
    #[serde(rename = "G", with = "crate::io::cmat")]
    pub g: CMatrix,
    #[serde(rename = "C_plus", with = "crate::io::cmat")]
    pub c_plus: CMatrix,
    /// Graph of `κ(Λ⁺)`.
    #[serde(rename = "A_plus", with = "crate::io::cmat")]
    pub a_plus: CMatrix,
    /// Graph of `Λ⁻` before straightening.
    #[serde(rename = "A_minus", with = "crate::io::cmat")]
    pub a_minus: CMatrix,
    #[serde(rename = "M1", with = "crate::io::cmat")]
    pub m1: CMatrix,
    #[serde(rename = "Phi2")]
    pub phi2: QuadraticWeight,
    #[serde(with = "crate::io::cmat")]
    pub kappa: CMatrix,
    /// Normalization applied to `G`: `"unit-eigenvector"` or `"user"`.
    pub gauge: String,
    pub jordan_residual: f64,
    pub ill_conditioned: bool,
    /// Size of the off-diagonal blocks of `κ_{A₊}κFκ^{−1}κ_{A₊}^{−1}`.
    pub decoupling_residual: f64,
    /// Max distance between `Spec M` and the upper-half-plane spectrum of `2F`.
    pub spectrum_residual: f64,
}

impl NormalFormResult {
    pub fn n(&self) -> usize {
        self.m.nrows()
    }

    /// `Φ₁(x) = ¼|x|² − ¼Re(C₊x, x)`.
    pub fn phi1(&self) -> QuadraticWeight {
        weight_from_gc(&identity(self.n()), &self.c_plus)
    }

    /// Same reduction with `G ↦ rG`.
    pub fn regauged(&self, r: f64) -> NormalFormResult {
        let mut out = self.clone();
        out.g = self.g.scale(r);
        out.phi2 = weight_from_gc(&out.g, &self.c_plus);
        out.gauge = format!("{}*{}", self.gauge, crate::io::fmt_real(r));
        out
    }
}

/// Everything up to and including `M₁`.
#[derive(Debug, Clone)]
pub struct Reduction {
    pub classification: Classification,
    pub f: HamiltonMap,
    pub manifolds: StableManifolds,
    pub kappa: CMatrix,
    pub a_plus: CMatrix,
    pub c_plus: CMatrix,
    pub m1: CMatrix,
    pub decoupling_residual: f64,
}

pub fn reduce_to_m1(q: &QuadraticForm, tol: &Tolerance) -> Result<Reduction> {
    let classification = symplectic::classify(q, tol);
    if !classification.is_covered() {
        return Err(Error::NotCovered(format!(
            "symbol is not partially elliptic (singular space dimension {})",
            classification.singular_space_dim
        )));
    }
    let f = hamilton_map(q);
    let manifolds = stable_manifolds(&f, tol)?;
    let kappa = straighten_kappa(&manifolds.minus, tol)?;
    let kappa_inv = matcore::inverse(&kappa)?;
    let f1 = &kappa * &f.f * &kappa_inv;
    let a_plus = gaussian_transport(&manifolds.plus.a, &kappa_inv, tol)?;
    let c_plus = cplus_from_aplus(&a_plus, tol)?;
    let ka = kappa_a(&a_plus)?;
    let reduced = &ka * f1 * kappa_a_inv(&a_plus)?;
    let n = q.n;
    let (ul, ur, ll, _) = blocks(&reduced);
    let decoupling_residual = (fro(&ur) + fro(&ll)) / fro(&reduced).max(1.0);
    if decoupling_residual > 1e-8 {
        return Err(Error::NotConverged(format!("reduced Hamilton map does not decouple ({decoupling_residual:e})")));
    }
    let m1 = ul.scale(2.0);
    debug_assert_eq!(m1.nrows(), n);
    Ok(Reduction { classification, f, manifolds, kappa, a_plus, c_plus, m1, decoupling_residual })
}

fn finish(red: Reduction, jf: JordanForm, gauge: &str) -> Result<NormalFormResult> {
    let lambdas: Vec<Complex64> = (0..jf.m.nrows()).map(|i| jf.m[(i, i)] * 0.5).collect();
    // spectrum check against 2F
    let mut want: Vec<Complex64> =
        matcore::eigenvalues(&red.f.f)?.into_iter().filter(|z| z.im > 0.0).map(|z| z * 2.0).collect();
    let mut spectrum_residual: f64 = 0.0;
    for i in 0..jf.m.nrows() {
        let z = jf.m[(i, i)];
        let (k, d) = want
            .iter()
            .enumerate()
            .map(|(k, w)| (k, (w - z).norm()))
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .ok_or_else(|| Error::NotConverged("spectrum mismatch".into()))?;
        spectrum_residual = spectrum_residual.max(d);
        want.remove(k);
    }
    let phi2 = weight_from_gc(&jf.g, &red.c_plus);
    phi2.require_convex()?;
    Ok(NormalFormResult {
        classification: red.classification,
        lambdas,
        m: jf.m,
        gammas: jf.gammas,
        g: jf.g,
        c_plus: red.c_plus,
        a_plus: red.a_plus,
        a_minus: red.manifolds.minus.a,
        m1: red.m1,
        phi2,
        kappa: red.kappa,
        gauge: gauge.into(),
        jordan_residual: jf.residual,
        ill_conditioned: jf.ill_conditioned,
        decoupling_residual: red.decoupling_residual,
        spectrum_residual,
    })
}

pub fn reduce(q: &QuadraticForm, tol: &Tolerance) -> Result<NormalFormResult> {
    let red = reduce_to_m1(q, tol)?;
    let jf = jordan_reduce(&red.m1, tol)?;
    finish(red, jf, "unit-eigenvector")
}

/// [`reduce`] with a caller-chosen `G`.
pub fn reduce_with_g(q: &QuadraticForm, g: &CMatrix, tol: &Tolerance) -> Result<NormalFormResult> {
    let red = reduce_to_m1(q, tol)?;
    let jf = jordan_from_g(&red.m1, g, tol)?;
    finish(red, jf, "user")
}
