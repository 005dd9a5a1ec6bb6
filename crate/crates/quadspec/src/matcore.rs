//! Dense complex linear algebra with explicit tolerances.
//!
//! Everything here works on [`CMatrix`] (a `nalgebra` dynamic matrix of
//! `Complex64`). The complex Schur form is computed in-house because the
//! invariant-subspace routines need eigenvalue reordering.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type CMatrix = DMatrix<Complex64>;
pub type CVector = DVector<Complex64>;

pub const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

#[inline]
pub fn c64(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Numerical thresholds shared by the whole pipeline.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerance {
    /// Relative singular-value cutoff for rank decisions.
    pub rank_tol: f64,
    /// Radius used to group eigenvalues.
    pub cluster_tol: f64,
    /// Bound on relative symmetry residuals.
    pub sym_tol: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance { rank_tol: 1e-10, cluster_tol: 1e-8, sym_tol: 1e-10 }
    }
}

impl Tolerance {
    pub fn new(rank_tol: f64, cluster_tol: f64, sym_tol: f64) -> Result<Self> {
        for (name, v) in [("rank_tol", rank_tol), ("cluster_tol", cluster_tol), ("sym_tol", sym_tol)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::Input(format!("{name} must be positive, got {v}")));
            }
        }
        Ok(Tolerance { rank_tol, cluster_tol, sym_tol })
    }
}

pub fn from_real(m: &DMatrix<f64>) -> CMatrix {
    m.map(|x| c64(x, 0.0))
}

pub fn real_part(m: &CMatrix) -> DMatrix<f64> {
    m.map(|z| z.re)
}

pub fn imag_part(m: &CMatrix) -> DMatrix<f64> {
    m.map(|z| z.im)
}

pub fn identity(n: usize) -> CMatrix {
    CMatrix::identity(n, n)
}

pub fn diag(d: &[Complex64]) -> CMatrix {
    CMatrix::from_diagonal(&CVector::from_column_slice(d))
}

/// Build a matrix from rows of `(re, im)` pairs.
pub fn from_rows(rows: &[&[Complex64]]) -> CMatrix {
    let r = rows.len();
    let c = if r == 0 { 0 } else { rows[0].len() };
    CMatrix::from_fn(r, c, |i, j| rows[i][j])
}

/// 2x2 block matrix `[[a, b], [c, d]]`.
pub fn block2(a: &CMatrix, b: &CMatrix, c: &CMatrix, d: &CMatrix) -> CMatrix {
    let (p, q) = (a.nrows(), a.ncols());
    let mut m = CMatrix::zeros(p + c.nrows(), q + b.ncols());
    m.view_mut((0, 0), a.shape()).copy_from(a);
    m.view_mut((0, q), b.shape()).copy_from(b);
    m.view_mut((p, 0), c.shape()).copy_from(c);
    m.view_mut((p, q), d.shape()).copy_from(d);
    m
}

/// Split a `2n x 2n` matrix into its four `n x n` blocks.
pub fn blocks(m: &CMatrix) -> (CMatrix, CMatrix, CMatrix, CMatrix) {
    let n = m.nrows() / 2;
    (
        m.view((0, 0), (n, n)).into_owned(),
        m.view((0, n), (n, n)).into_owned(),
        m.view((n, 0), (n, n)).into_owned(),
        m.view((n, n), (n, n)).into_owned(),
    )
}

pub fn fro(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// `‖A − Aᵗ‖ / ‖A‖` (zero for the zero matrix).
pub fn symmetric_residual(a: &CMatrix) -> f64 {
    let s = fro(a);
    if s == 0.0 {
        return 0.0;
    }
    fro(&(a - a.transpose())) / s
}

/// `‖A − A*‖ / ‖A‖` (zero for the zero matrix).
pub fn hermitian_residual(a: &CMatrix) -> f64 {
    let s = fro(a);
    if s == 0.0 {
        return 0.0;
    }
    fro(&(a - a.adjoint())) / s
}

pub fn symmetrize(a: &CMatrix) -> CMatrix {
    (a + a.transpose()).scale(0.5)
}

pub fn hermitize(a: &CMatrix) -> CMatrix {
    (a + a.adjoint()).scale(0.5)
}

pub fn is_finite(a: &CMatrix) -> bool {
    a.iter().all(|z| z.re.is_finite() && z.im.is_finite())
}

pub fn inverse(a: &CMatrix) -> Result<CMatrix> {
    if a.nrows() != a.ncols() {
        return Err(Error::Dimension(format!("inverse of {}x{}", a.nrows(), a.ncols())));
    }
    let inv = a.clone().try_inverse().ok_or(Error::Singular("inverse"))?;
    if !is_finite(&inv) {
        return Err(Error::Singular("inverse"));
    }
    Ok(inv)
}

/// Solve `A X = B`.
pub fn solve(a: &CMatrix, b: &CMatrix) -> Result<CMatrix> {
    a.clone().lu().solve(b).filter(is_finite).ok_or(Error::Singular("solve"))
}

/// Singular values in descending order.
pub fn singular_values(a: &CMatrix) -> Vec<f64> {
    if a.is_empty() {
        return Vec::new();
    }
    a.clone().svd(false, false).singular_values.iter().copied().collect()
}

pub fn spectral_norm(a: &CMatrix) -> f64 {
    singular_values(a).first().copied().unwrap_or(0.0)
}

/// `‖A‖₂ ‖A⁻¹‖₂`.
pub fn condition_number(a: &CMatrix) -> f64 {
    let s = singular_values(a);
    match (s.first(), s.last()) {
        (Some(&hi), Some(&lo)) if lo > 0.0 => hi / lo,
        _ => f64::INFINITY,
    }
}

pub fn smallest_singular(a: &CMatrix) -> f64 {
    singular_values(a).last().copied().unwrap_or(0.0)
}

/// Orthonormal basis of the kernel of `a` using the relative cutoff
/// `tol.rank_tol · σ_max`.
pub fn kernel(a: &CMatrix, tol: &Tolerance) -> CMatrix {
    let smax = spectral_norm(a);
    kernel_abs(a, tol.rank_tol * smax)
}

/// Kernel with an absolute singular-value threshold.
pub fn kernel_abs(a: &CMatrix, threshold: f64) -> CMatrix {
    let (r, c) = a.shape();
    if c == 0 {
        return CMatrix::zeros(0, 0);
    }
    let padded = if r < c {
        let mut p = CMatrix::zeros(c, c);
        p.view_mut((0, 0), (r, c)).copy_from(a);
        p
    } else {
        a.clone()
    };
    if fro(&padded) == 0.0 {
        return identity(c);
    }
    let svd = padded.svd(false, true);
    let v = svd.v_t.expect("requested").adjoint();
    let idx: Vec<usize> =
        (0..c).filter(|&i| svd.singular_values[i] <= threshold).collect();
    CMatrix::from_fn(c, idx.len(), |i, j| v[(i, idx[j])])
}

pub fn rank(a: &CMatrix, tol: &Tolerance) -> usize {
    a.ncols() - kernel(a, tol).ncols()
}

/// Ascending eigenvalues and eigenvectors of a Hermitian matrix.
pub fn hermitian_eigen(h: &CMatrix) -> (Vec<f64>, CMatrix) {
    let e = SymmetricEigen::new(hermitize(h));
    let n = h.nrows();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| e.eigenvalues[i].total_cmp(&e.eigenvalues[j]));
    let vals = order.iter().map(|&i| e.eigenvalues[i]).collect();
    let vecs = CMatrix::from_fn(n, n, |i, j| e.eigenvectors[(i, order[j])]);
    (vals, vecs)
}

/// Ascending eigenvalues of a real symmetric matrix.
pub fn real_symmetric_eigenvalues(m: &DMatrix<f64>) -> Vec<f64> {
    let s = (m + m.transpose()) * 0.5;
    let mut v: Vec<f64> = SymmetricEigen::new(s).eigenvalues.iter().copied().collect();
    v.sort_by(f64::total_cmp);
    v
}

/// `(H^{1/2}, H^{-1/2})` for Hermitian positive definite `H`.
pub fn herm_sqrt_inv(h: &CMatrix, tol: &Tolerance) -> Result<(CMatrix, CMatrix)> {
    let res = hermitian_residual(h);
    if res > tol.sym_tol {
        return Err(Error::NotSymmetric(res));
    }
    let (vals, v) = hermitian_eigen(h);
    let lo = vals.first().copied().unwrap_or(0.0);
    if lo <= tol.rank_tol * vals.last().copied().unwrap_or(1.0).abs().max(1.0) {
        return Err(Error::NotPositiveDefinite(lo));
    }
    let f = |g: &dyn Fn(f64) -> f64| {
        let d: Vec<Complex64> = vals.iter().map(|&x| c64(g(x), 0.0)).collect();
        hermitize(&(&v * diag(&d) * v.adjoint()))
    };
    Ok((f(&|x| x.sqrt()), f(&|x| 1.0 / x.sqrt())))
}

/// Rotation `(c, s)` with `[[c, s], [−s̄, c]]·[x; y] = [r; 0]`.
fn givens(x: Complex64, y: Complex64) -> (f64, Complex64) {
    let ax = x.norm();
    let ay = y.norm();
    let nrm = ax.hypot(ay);
    if nrm == 0.0 || ay == 0.0 {
        return (1.0, Complex64::new(0.0, 0.0));
    }
    if ax == 0.0 {
        return (0.0, y.conj() / ay);
    }
    (ax / nrm, (x / ax) * y.conj() / nrm)
}

fn rot_rows(m: &mut CMatrix, k: usize, c: f64, s: Complex64, cols: std::ops::Range<usize>) {
    for j in cols {
        let a = m[(k, j)];
        let b = m[(k + 1, j)];
        m[(k, j)] = a * c + s * b;
        m[(k + 1, j)] = b * c - s.conj() * a;
    }
}

fn rot_cols(m: &mut CMatrix, k: usize, c: f64, s: Complex64, rows: std::ops::Range<usize>) {
    for i in rows {
        let a = m[(i, k)];
        let b = m[(i, k + 1)];
        m[(i, k)] = a * c + s.conj() * b;
        m[(i, k + 1)] = b * c - s * a;
    }
}

/// Complex Schur form `A = Z T Z*` with `T` upper triangular.
#[derive(Debug, Clone)]
pub struct Schur {
    pub z: CMatrix,
    pub t: CMatrix,
}

impl Schur {
    pub fn new(a: &CMatrix) -> Result<Self> {
        let n = a.nrows();
        if n != a.ncols() {
            return Err(Error::Dimension(format!("Schur of {}x{}", n, a.ncols())));
        }
        if !is_finite(a) {
            return Err(Error::Input("non-finite matrix entries".into()));
        }
        if n == 0 {
            return Ok(Schur { z: CMatrix::zeros(0, 0), t: CMatrix::zeros(0, 0) });
        }
        let (mut z, mut t) = nalgebra::linalg::Hessenberg::new(a.clone()).unpack();
        for j in 0..n {
            for i in j + 2..n {
                t[(i, j)] = Complex64::new(0.0, 0.0);
            }
        }
        let eps = f64::EPSILON;
        let scale = fro(&t).max(f64::MIN_POSITIVE);
        let mut hi = n - 1;
        let mut iter = 0usize;
        let mut total = 0usize;
        while hi > 0 {
            let mut l = hi;
            while l > 0 {
                let mut s = t[(l - 1, l - 1)].norm() + t[(l, l)].norm();
                if s == 0.0 {
                    s = scale;
                }
                if t[(l, l - 1)].norm() <= eps * s {
                    t[(l, l - 1)] = Complex64::new(0.0, 0.0);
                    break;
                }
                l -= 1;
            }
            if l == hi {
                hi -= 1;
                iter = 0;
                continue;
            }
            iter += 1;
            total += 1;
            if total > 100 * n {
                return Err(Error::NotConverged("complex Schur QR iteration".into()));
            }
            let mu = if iter % 11 == 0 {
                t[(hi, hi)] + Complex64::new(0.75 * t[(hi, hi - 1)].norm(), 0.0)
            } else {
                let a = t[(hi - 1, hi - 1)];
                let b = t[(hi - 1, hi)];
                let c = t[(hi, hi - 1)];
                let d = t[(hi, hi)];
                let half = (a - d) * 0.5;
                let disc = (half * half + b * c).sqrt();
                let m1 = (a + d) * 0.5 + disc;
                let m2 = (a + d) * 0.5 - disc;
                if (m1 - d).norm() <= (m2 - d).norm() {
                    m1
                } else {
                    m2
                }
            };
            let mut x = t[(l, l)] - mu;
            let mut y = t[(l + 1, l)];
            for k in l..hi {
                let (c, s) = givens(x, y);
                let start = if k > l { k - 1 } else { l };
                rot_rows(&mut t, k, c, s, start..n);
                rot_cols(&mut t, k, c, s, 0..(k + 3).min(hi + 1));
                rot_cols(&mut z, k, c, s, 0..n);
                if k > l {
                    t[(k + 1, k - 1)] = Complex64::new(0.0, 0.0);
                }
                if k + 1 < hi {
                    x = t[(k + 1, k)];
                    y = t[(k + 2, k)];
                }
            }
        }
        for j in 0..n {
            for i in j + 1..n {
                t[(i, j)] = Complex64::new(0.0, 0.0);
            }
        }
        Ok(Schur { z, t })
    }

    pub fn eigenvalues(&self) -> Vec<Complex64> {
        (0..self.t.nrows()).map(|i| self.t[(i, i)]).collect()
    }

    /// Exchange diagonal entries `k` and `k+1`.
    fn swap(&mut self, k: usize) {
        let n = self.t.nrows();
        let t11 = self.t[(k, k)];
        let t22 = self.t[(k + 1, k + 1)];
        let (c, s) = givens(self.t[(k, k + 1)], t22 - t11);
        rot_rows(&mut self.t, k, c, s, k + 2..n);
        rot_cols(&mut self.t, k, c, s, 0..k);
        self.t[(k, k)] = t22;
        self.t[(k + 1, k + 1)] = t11;
        rot_cols(&mut self.z, k, c, s, 0..n);
    }

    /// Move every eigenvalue accepted by `select` to the leading block,
    /// keeping relative order. Returns the size of that block.
    pub fn reorder(&mut self, select: impl Fn(Complex64) -> bool) -> usize {
        let n = self.t.nrows();
        let mut placed = 0;
        for j in 0..n {
            if select(self.t[(j, j)]) {
                for k in (placed..j).rev() {
                    self.swap(k);
                }
                placed += 1;
            }
        }
        placed
    }

    pub fn leading_basis(&self, k: usize) -> CMatrix {
        self.z.columns(0, k).into_owned()
    }
}

pub fn eigenvalues(a: &CMatrix) -> Result<Vec<Complex64>> {
    Ok(Schur::new(a)?.eigenvalues())
}

/// Half-plane selectors for [`invariant_subspace`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Region {
    UpperHalfPlane,
    LowerHalfPlane,
}

impl Region {
    pub fn contains(&self, z: Complex64) -> bool {
        match self {
            Region::UpperHalfPlane => z.im > 0.0,
            Region::LowerHalfPlane => z.im < 0.0,
        }
    }

    pub fn boundary_distance(&self, z: Complex64) -> f64 {
        z.im.abs()
    }

    pub fn complement(&self) -> Region {
        match self {
            Region::UpperHalfPlane => Region::LowerHalfPlane,
            Region::LowerHalfPlane => Region::UpperHalfPlane,
        }
    }
}

/// Orthonormal basis of the sum of generalized eigenspaces of `a` whose
/// eigenvalues lie in `region`.
pub fn invariant_subspace(a: &CMatrix, region: Region, tol: &Tolerance) -> Result<CMatrix> {
    let mut s = Schur::new(a)?;
    if let Some(z) = s.eigenvalues().into_iter().find(|z| region.boundary_distance(*z) < tol.cluster_tol)
    {
        return Err(Error::BoundaryEigenvalue(z));
    }
    let k = s.reorder(|z| region.contains(z));
    Ok(s.leading_basis(k))
}

/// Principal square root of a normal matrix via its Schur form.
fn normal_sqrt(p: &CMatrix) -> Result<CMatrix> {
    let s = Schur::new(p)?;
    let d: Vec<Complex64> = s.eigenvalues().iter().map(|z| z.sqrt()).collect();
    Ok(&s.z * diag(&d) * s.z.adjoint())
}

/// Takagi factorization `C = U Σ Uᵗ` of a complex symmetric matrix, with
/// `Σ` returned as descending singular values.
pub fn takagi(c: &CMatrix, tol: &Tolerance) -> Result<(CMatrix, Vec<f64>)> {
    let res = symmetric_residual(c);
    if res > tol.sym_tol {
        return Err(Error::NotSymmetric(res));
    }
    let n = c.nrows();
    let svd = symmetrize(c).svd(true, true);
    let u = svd.u.expect("requested");
    let v = svd.v_t.expect("requested").adjoint();
    let sv: Vec<f64> = svd.singular_values.iter().copied().collect();
    let smax = sv.first().copied().unwrap_or(0.0);
    let radius = tol.cluster_tol * smax.max(1.0);
    let mut w = u.clone();
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && sv[end - 1] - sv[end] <= radius {
            end += 1;
        }
        if sv[start] > radius {
            let m = end - start;
            let uc = u.columns(start, m).into_owned();
            let vc = v.columns(start, m).into_owned();
            let p = symmetrize(&(vc.adjoint() * uc.map(|z| z.conj())));
            let r = normal_sqrt(&p)?;
            w.columns_mut(start, m).copy_from(&(uc * r));
        }
        start = end;
    }
    Ok((w, sv))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random(n: usize, m: usize, rng: &mut ChaCha8Rng) -> CMatrix {
        CMatrix::from_fn(n, m, |_, _| c64(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
    }

    #[test]
    fn kernel_examples() {
        let tol = Tolerance::default();
        let k = kernel(&CMatrix::zeros(2, 2), &tol);
        assert_eq!(k, identity(2));
        let k = kernel(&diag(&[c64(1.0, 0.0), c64(0.0, 0.0)]), &tol);
        assert_eq!(k.ncols(), 1);
        assert!((k[(1, 0)].norm() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn kernel_recovers_planted_vector() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let tol = Tolerance::default();
        let v = random(4, 1, &mut rng);
        let v = v.unscale(fro(&v));
        let b = random(4, 4, &mut rng);
        let a = b * (identity(4) - &v * v.adjoint());
        let k = kernel(&a, &tol);
        assert_eq!(k.ncols(), 1);
        let overlap = (k.adjoint() * &v)[(0, 0)].norm();
        assert!((1.0 - overlap).abs() < 1e-12);
    }

    #[test]
    fn schur_reconstructs_and_is_triangular() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in 1..9 {
            let a = random(n, n, &mut rng);
            let s = Schur::new(&a).unwrap();
            let r = &s.z * &s.t * s.z.adjoint() - &a;
            assert!(fro(&r) < 1e-12 * fro(&a).max(1.0), "n={n}");
            assert!(fro(&(s.z.adjoint() * &s.z - identity(n))) < 1e-12);
        }
    }

    #[test]
    fn schur_handles_defective_and_real_input() {
        let j = from_rows(&[&[c64(0.0, 2.0), c64(1.0, 0.0)], &[c64(0.0, 0.0), c64(0.0, 2.0)]]);
        let s = Schur::new(&j).unwrap();
        for z in s.eigenvalues() {
            assert!((z - c64(0.0, 2.0)).norm() < 1e-7);
        }
        let rot = from_rows(&[&[c64(0.0, 0.0), c64(1.0, 0.0)], &[c64(-1.0, 0.0), c64(0.0, 0.0)]]);
        let mut ev = eigenvalues(&rot).unwrap();
        ev.sort_by(|a, b| a.im.total_cmp(&b.im));
        assert!((ev[0] - c64(0.0, -1.0)).norm() < 1e-13);
        assert!((ev[1] - c64(0.0, 1.0)).norm() < 1e-13);
    }

    #[test]
    fn reorder_keeps_decomposition() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let a = random(6, 6, &mut rng);
        let mut s = Schur::new(&a).unwrap();
        let k = s.reorder(|z| z.im > 0.0);
        let ev = s.eigenvalues();
        assert!(ev[..k].iter().all(|z| z.im > 0.0));
        assert!(ev[k..].iter().all(|z| z.im <= 0.0));
        let r = &s.z * &s.t * s.z.adjoint() - &a;
        assert!(fro(&r) < 1e-12 * fro(&a));
        for j in 0..6 {
            for i in j + 1..6 {
                assert!(s.t[(i, j)].norm() < 1e-13);
            }
        }
    }

    #[test]
    fn invariant_subspace_diagonal() {
        let tol = Tolerance::default();
        let a = diag(&[I, -I]);
        let v = invariant_subspace(&a, Region::UpperHalfPlane, &tol).unwrap();
        assert_eq!(v.ncols(), 1);
        assert!((v[(0, 0)].norm() - 1.0).abs() < 1e-14);
        let b = diag(&[c64(1.0, 0.0), I]);
        assert!(matches!(
            invariant_subspace(&b, Region::UpperHalfPlane, &tol),
            Err(Error::BoundaryEigenvalue(_))
        ));
    }

    #[test]
    fn invariant_subspaces_are_invariant_and_complementary() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let tol = Tolerance::default();
        for _ in 0..20 {
            let a = random(6, 6, &mut rng);
            let up = invariant_subspace(&a, Region::UpperHalfPlane, &tol).unwrap();
            let lo = invariant_subspace(&a, Region::LowerHalfPlane, &tol).unwrap();
            assert_eq!(up.ncols() + lo.ncols(), 6);
            let p = &up * up.adjoint();
            let leak = &a * &up - &p * &a * &up;
            assert!(fro(&leak) < 1e-10 * fro(&a));
            let mut both = CMatrix::zeros(6, 6);
            both.columns_mut(0, up.ncols()).copy_from(&up);
            both.columns_mut(up.ncols(), lo.ncols()).copy_from(&lo);
            assert_eq!(rank(&both, &tol), 6);
        }
    }

    #[test]
    fn takagi_examples() {
        let tol = Tolerance::default();
        let (u, s) = takagi(&diag(&[c64(0.5, 0.0), c64(0.2, 0.0)]), &tol).unwrap();
        assert!((s[0] - 0.5).abs() < 1e-15 && (s[1] - 0.2).abs() < 1e-15);
        let r = &u * diag(&[c64(0.5, 0.0), c64(0.2, 0.0)]) * u.transpose();
        assert!(fro(&(r - diag(&[c64(0.5, 0.0), c64(0.2, 0.0)]))) < 1e-14);

        let x = from_rows(&[&[c64(0.0, 0.0), c64(1.0, 0.0)], &[c64(1.0, 0.0), c64(0.0, 0.0)]]);
        let (u, s) = takagi(&x, &tol).unwrap();
        assert!((s[0] - 1.0).abs() < 1e-14 && (s[1] - 1.0).abs() < 1e-14);
        let sig = diag(&[c64(s[0], 0.0), c64(s[1], 0.0)]);
        assert!(fro(&(&u * sig * u.transpose() - &x)) < 1e-12);

        let cp = CMatrix::from_element(1, 1, c64(-0.5, -0.5));
        let (_, s) = takagi(&cp, &tol).unwrap();
        assert!((s[0] - 0.5f64.sqrt()).abs() < 1e-15);

        let ns = from_rows(&[&[c64(0.0, 0.0), c64(1.0, 0.0)], &[c64(0.0, 0.0), c64(0.0, 0.0)]]);
        assert!(matches!(takagi(&ns, &tol), Err(Error::NotSymmetric(_))));
    }

    #[test]
    fn takagi_random_reconstruction() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let tol = Tolerance::default();
        for k in 0..100 {
            let n = 1 + k % 8;
            let b = random(n, n, &mut rng);
            let c = &b + b.transpose();
            let (u, s) = takagi(&c, &tol).unwrap();
            let sig = diag(&s.iter().map(|&x| c64(x, 0.0)).collect::<Vec<_>>());
            assert!(fro(&(&u * sig * u.transpose() - &c)) <= 1e-12 * fro(&c));
            assert!(fro(&(u.adjoint() * &u - identity(n))) < 1e-12);
            assert!(s.windows(2).all(|w| w[0] >= w[1]));
        }
    }

    #[test]
    fn takagi_degenerate_cluster() {
        let tol = Tolerance::default();
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let q = random(3, 3, &mut rng).qr().q();
        let c = &q * diag(&[c64(0.7, 0.0), c64(0.7, 0.0), c64(0.1, 0.0)]) * q.transpose();
        let (u, s) = takagi(&c, &tol).unwrap();
        let sig = diag(&s.iter().map(|&x| c64(x, 0.0)).collect::<Vec<_>>());
        assert!(fro(&(&u * sig * u.transpose() - &c)) < 1e-12);
    }

    #[test]
    fn herm_sqrt_examples() {
        let tol = Tolerance::default();
        let (s, si) = herm_sqrt_inv(&identity(2), &tol).unwrap();
        assert!(fro(&(s - identity(2))) < 1e-15 && fro(&(si - identity(2))) < 1e-15);
        let (s, si) = herm_sqrt_inv(&diag(&[c64(4.0, 0.0), c64(9.0, 0.0)]), &tol).unwrap();
        assert!(fro(&(s - diag(&[c64(2.0, 0.0), c64(3.0, 0.0)]))) < 1e-14);
        assert!(fro(&(si - diag(&[c64(0.5, 0.0), c64(1.0 / 3.0, 0.0)]))) < 1e-14);
        assert!(matches!(
            herm_sqrt_inv(&diag(&[c64(1.0, 0.0), c64(-1.0, 0.0)]), &tol),
            Err(Error::NotPositiveDefinite(_))
        ));
    }

    #[test]
    fn herm_sqrt_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        let tol = Tolerance::default();
        for n in 1..7 {
            let b = random(n, n, &mut rng);
            let h = b.adjoint() * &b + identity(n);
            let (s, si) = herm_sqrt_inv(&h, &tol).unwrap();
            assert!(fro(&(&s * &s - &h)) <= 1e-12 * fro(&h));
            assert!(fro(&(&s * &si - identity(n))) <= 1e-12);
        }
    }

    #[test]
    fn smallest_singular_examples() {
        assert!((smallest_singular(&identity(3)) - 1.0).abs() < 1e-15);
        assert!((smallest_singular(&diag(&[c64(3.0, 0.0), c64(0.5, 0.0)])) - 0.5).abs() < 1e-15);
        let j = from_rows(&[&[c64(0.0, 0.0), c64(1.0, 0.0)], &[c64(0.0, 0.0), c64(0.0, 0.0)]]);
        assert!(smallest_singular(&j) < 1e-15);
    }

    #[test]
    fn rank_nullity() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let tol = Tolerance::default();
        for r in 0..5 {
            let a = random(5, r.max(1), &mut rng) * random(r.max(1), 5, &mut rng);
            let a = if r == 0 { CMatrix::zeros(5, 5) } else { a };
            assert_eq!(rank(&a, &tol), r);
            assert_eq!(rank(&a, &tol) + kernel(&a, &tol).ncols(), 5);
        }
    }
}
