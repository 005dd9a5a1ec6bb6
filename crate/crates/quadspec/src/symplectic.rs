//! Quadratic symbols on `R^{2n}`, Hamilton maps and the ellipticity
//! classification.
//!
//! Coordinates are `X = (x, ξ)`; the symplectic form is
//! `σ((x,ξ),(y,η)) = ξ·y − η·x = (X, JY)` with `J = [[0, −I], [I, 0]]`.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matcore::{
    self, block2, fro, identity, imag_part, real_part, symmetric_residual, symmetrize, CMatrix,
    CVector, Tolerance,
};

/// `q(X) = (X, QX)` with `Q` complex symmetric of size `2n`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuadraticForm {
    pub n: usize,
    #[serde(rename = "Q", with = "crate::io::cmat")]
    pub q: CMatrix,
}

impl QuadraticForm {
    pub fn new(q: CMatrix, tol: &Tolerance) -> Result<Self> {
        let (r, c) = q.shape();
        if r != c || r == 0 || r % 2 != 0 {
            return Err(Error::Dimension(format!("Q must be 2n x 2n, got {r}x{c}")));
        }
        if !matcore::is_finite(&q) {
            return Err(Error::Input("non-finite entry in Q".into()));
        }
        let res = symmetric_residual(&q);
        if res > tol.sym_tol {
            return Err(Error::NotSymmetric(res));
        }
        Ok(QuadraticForm { n: r / 2, q: symmetrize(&q) })
    }

    /// Build `Q` from monomial coefficients `c · x^α ξ^β` with `|α| + |β| = 2`.
    pub fn from_coefficients(n: usize, terms: &[(Vec<u32>, Vec<u32>, Complex64)]) -> Result<Self> {
        let mut q = CMatrix::zeros(2 * n, 2 * n);
        for (alpha, beta, c) in terms {
            if alpha.len() != n || beta.len() != n {
                return Err(Error::Dimension("multi-index length must equal n".into()));
            }
            let mut idx = Vec::new();
            for (j, &a) in alpha.iter().enumerate() {
                idx.extend(std::iter::repeat(j).take(a as usize));
            }
            for (j, &b) in beta.iter().enumerate() {
                idx.extend(std::iter::repeat(n + j).take(b as usize));
            }
            if idx.len() != 2 {
                return Err(Error::Input("only degree-2 monomials are allowed".into()));
            }
            let (i, j) = (idx[0], idx[1]);
            if i == j {
                q[(i, i)] += c;
            } else {
                q[(i, j)] += c * 0.5;
                q[(j, i)] += c * 0.5;
            }
        }
        Ok(QuadraticForm { n, q })
    }

    pub fn evaluate(&self, x: &CVector) -> Complex64 {
        (x.transpose() * &self.q * x)[(0, 0)]
    }

    /// The symbol `q ∘ κ` for a linear map `κ`.
    pub fn compose(&self, kappa: &CMatrix) -> QuadraticForm {
        QuadraticForm { n: self.n, q: symmetrize(&(kappa.transpose() * &self.q * kappa)) }
    }
}

/// `J = [[0, −I], [I, 0]]`.
pub fn j_matrix(n: usize) -> CMatrix {
    let z = CMatrix::zeros(n, n);
    block2(&z, &(-identity(n)), &identity(n), &z)
}

pub fn sigma(x: &CVector, y: &CVector) -> Complex64 {
    let n = x.len() / 2;
    (x.transpose() * j_matrix(n) * y)[(0, 0)]
}

/// The Hamilton map `F = J⁻¹Q`, characterized by `q(X) = σ(X, FX)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HamiltonMap {
    #[serde(rename = "F", with = "crate::io::cmat")]
    pub f: CMatrix,
}

impl HamiltonMap {
    pub fn n(&self) -> usize {
        self.f.nrows() / 2
    }
}

pub fn hamilton_map(q: &QuadraticForm) -> HamiltonMap {
    HamiltonMap { f: -j_matrix(q.n) * &q.q }
}

/// Symbol whose Hamilton map is `f` (inverse of [`hamilton_map`]).
pub fn form_from_hamilton(f: &CMatrix) -> QuadraticForm {
    let n = f.nrows() / 2;
    QuadraticForm { n, q: symmetrize(&(j_matrix(n) * f)) }
}

/// `max |σ(e_i, F e_j) + σ(F e_i, e_j)|` over basis pairs.
pub fn antisymmetry_residual(f: &CMatrix) -> f64 {
    let n = f.nrows() / 2;
    let j = j_matrix(n);
    let m = &j * f + f.transpose() * &j;
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Kind {
    Elliptic,
    PartiallyElliptic,
    NotCovered,
}

impl std::fmt::Display for Kind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Kind::Elliptic => "Elliptic",
            Kind::PartiallyElliptic => "PartiallyElliptic",
            Kind::NotCovered => "NotCovered",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Classification {
    pub kind: Kind,
    pub k0: Option<usize>,
    pub singular_space_dim: usize,
    /// Least eigenvalue of `Re Q` on `R^{2n}`.
    pub min_re_q: f64,
}

impl Classification {
    pub fn is_covered(&self) -> bool {
        self.kind != Kind::NotCovered
    }
}

/// Dimensions of `∩_{k≤K} ker((Re F)(Im F)^k)` for `K = 0, …, 2n−1`.
pub fn singular_space_dims(f: &CMatrix, tol: &Tolerance) -> Vec<usize> {
    let dim = f.nrows();
    let re = real_part(f);
    let im = imag_part(f);
    let mut rows: Vec<DMatrix<f64>> = Vec::new();
    let mut power = DMatrix::<f64>::identity(dim, dim);
    let mut dims = Vec::with_capacity(dim);
    for _ in 0..dim {
        rows.push(&re * &power);
        power = &im * power;
        let mut stack = DMatrix::<f64>::zeros(rows.len() * dim, dim);
        for (k, r) in rows.iter().enumerate() {
            stack.view_mut((k * dim, 0), (dim, dim)).copy_from(r);
        }
        dims.push(matcore::kernel(&matcore::from_real(&stack), tol).ncols());
    }
    dims
}

pub fn classify(q: &QuadraticForm, tol: &Tolerance) -> Classification {
    let re_q = real_part(&q.q);
    let min_re_q = matcore::real_symmetric_eigenvalues(&re_q)[0];
    let scale = fro(&q.q).max(1.0);
    if min_re_q > tol.rank_tol * scale {
        return Classification { kind: Kind::Elliptic, k0: Some(0), singular_space_dim: 0, min_re_q };
    }
    let f = hamilton_map(q).f;
    let dims = singular_space_dims(&f, tol);
    let sdim = *dims.last().unwrap_or(&0);
    if min_re_q >= -tol.rank_tol * scale {
        if let Some(k0) = dims.iter().position(|&d| d == 0) {
            return Classification {
                kind: Kind::PartiallyElliptic,
                k0: Some(k0),
                singular_space_dim: 0,
                min_re_q,
            };
        }
    }
    Classification { kind: Kind::NotCovered, k0: None, singular_space_dim: sdim, min_re_q }
}

/// Number of eigenvalues of `F` in the upper and lower half-planes.
pub fn uhp_count(f: &HamiltonMap, tol: &Tolerance) -> Result<(usize, usize)> {
    let ev = matcore::eigenvalues(&f.f)?;
    if let Some(z) = ev.iter().find(|z| z.im.abs() < tol.cluster_tol) {
        return Err(Error::RealEigenvalue(*z));
    }
    let up = ev.iter().filter(|z| z.im > 0.0).count();
    Ok((up, ev.len() - up))
}

/// Real symplectic generators for tests and examples:
/// `[[I, S], [0, I]]`, `[[I, 0], [S, I]]` (S symmetric) and
/// `[[A, 0], [0, A^{-t}]]`.
pub fn symplectic_shear_upper(s: &DMatrix<f64>) -> CMatrix {
    let n = s.nrows();
    let s = matcore::from_real(&((s + s.transpose()) * 0.5));
    block2(&identity(n), &s, &CMatrix::zeros(n, n), &identity(n))
}

pub fn symplectic_shear_lower(s: &DMatrix<f64>) -> CMatrix {
    let n = s.nrows();
    let s = matcore::from_real(&((s + s.transpose()) * 0.5));
    block2(&identity(n), &CMatrix::zeros(n, n), &s, &identity(n))
}

pub fn symplectic_dilation(a: &DMatrix<f64>) -> Result<CMatrix> {
    let n = a.nrows();
    let ai = a.clone().try_inverse().ok_or(Error::Singular("dilation"))?;
    Ok(block2(
        &matcore::from_real(a),
        &CMatrix::zeros(n, n),
        &CMatrix::zeros(n, n),
        &matcore::from_real(&ai.transpose()),
    ))
}

/// `‖κᵗJκ − J‖`.
pub fn symplectic_residual(kappa: &CMatrix) -> f64 {
    let j = j_matrix(kappa.nrows() / 2);
    fro(&(kappa.transpose() * &j * kappa - j))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::matcore::{c64, from_rows, I};

    #[test]
    fn davies_hamilton_map() {
        let th = 0.3;
        let q = fixtures::davies(th);
        let f = hamilton_map(&q).f;
        let e = |s: f64| Complex64::from_polar(1.0, s * th);
        let want = from_rows(&[&[c64(0.0, 0.0), e(-2.0)], &[-e(2.0), c64(0.0, 0.0)]]);
        assert!(fro(&(f - want)) < 1e-15);
        let x = CVector::from_vec(vec![c64(1.0, 0.0), c64(0.0, 0.0)]);
        assert!((q.evaluate(&x) - e(2.0)).norm() < 1e-15);
    }

    #[test]
    fn kfp_hamilton_map_matches_display() {
        let f = hamilton_map(&fixtures::kfp()).f;
        let z = c64(0.0, 0.0);
        let want = from_rows(&[
            &[z, I * 0.5, z, z],
            &[-I * 0.25, z, z, c64(0.5, 0.0)],
            &[z, z, z, I * 0.25],
            &[z, c64(-0.5, 0.0), -I * 0.5, z],
        ]);
        assert!(fro(&(f - want)) < 1e-15);
        let x = CVector::from_vec(vec![z, c64(1.0, 0.0), z, z]);
        assert!((fixtures::kfp().evaluate(&x) - c64(0.5, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn xi_squared() {
        let q = QuadraticForm::from_coefficients(1, &[(vec![0], vec![2], c64(1.0, 0.0))]).unwrap();
        let f = hamilton_map(&q).f;
        let want = from_rows(&[&[c64(0.0, 0.0), c64(1.0, 0.0)], &[c64(0.0, 0.0), c64(0.0, 0.0)]]);
        assert_eq!(f, want);
    }

    #[test]
    fn coefficient_conversion_matches_fixture() {
        let q = QuadraticForm::from_coefficients(
            2,
            &[
                (vec![0, 2], vec![0, 0], c64(0.5, 0.0)),
                (vec![0, 0], vec![0, 2], c64(0.5, 0.0)),
                (vec![0, 1], vec![1, 0], I),
                (vec![1, 0], vec![0, 1], -I * 0.5),
            ],
        )
        .unwrap();
        assert!(fro(&(q.q - fixtures::kfp().q)) < 1e-15);
    }

    #[test]
    fn classification_examples() {
        let tol = Tolerance::default();
        let c = classify(&fixtures::davies(0.3), &tol);
        assert_eq!((c.kind, c.k0), (Kind::Elliptic, Some(0)));
        let c = classify(&fixtures::kfp(), &tol);
        assert_eq!((c.kind, c.k0), (Kind::PartiallyElliptic, Some(1)));
        let x2 = QuadraticForm::from_coefficients(1, &[(vec![2], vec![0], c64(1.0, 0.0))]).unwrap();
        let c = classify(&x2, &tol);
        assert_eq!((c.kind, c.singular_space_dim), (Kind::NotCovered, 1));
        let c = classify(&fixtures::davies(1.0), &tol);
        assert_eq!(c.kind, Kind::NotCovered);
    }

    #[test]
    fn uhp_counts() {
        let tol = Tolerance::default();
        assert_eq!(uhp_count(&hamilton_map(&fixtures::davies(0.3)), &tol).unwrap(), (1, 1));
        assert_eq!(uhp_count(&hamilton_map(&fixtures::kfp()), &tol).unwrap(), (2, 2));
        let f = HamiltonMap { f: matcore::diag(&[I, I, -I, -I]) };
        assert_eq!(uhp_count(&f, &tol).unwrap(), (2, 2));
        let x2 = QuadraticForm::from_coefficients(1, &[(vec![2], vec![0], c64(1.0, 0.0))]).unwrap();
        assert!(matches!(uhp_count(&hamilton_map(&x2), &tol), Err(Error::RealEigenvalue(_))));
    }

    #[test]
    fn rejects_non_symmetric() {
        let q = from_rows(&[&[c64(1.0, 0.0), c64(1.0, 0.0)], &[c64(0.0, 0.0), c64(1.0, 0.0)]]);
        assert!(matches!(QuadraticForm::new(q, &Tolerance::default()), Err(Error::NotSymmetric(_))));
    }
}
