//! Reference symbols: the rotated harmonic oscillator (Davies), a
//! Kramers–Fokker–Planck model, a Jordan-block example and decoupled
//! harmonic oscillators.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::matcore::{block2, c64, diag, from_rows, identity, CMatrix, I};
use crate::symplectic::QuadraticForm;

/// `e^{−2iθ}ξ² + e^{2iθ}x²`, elliptic for `|θ| < π/4`.
pub fn davies(theta: f64) -> QuadraticForm {
    let q = diag(&[Complex64::from_polar(1.0, 2.0 * theta), Complex64::from_polar(1.0, -2.0 * theta)]);
    QuadraticForm { n: 1, q }
}

/// `½(v² + η²) + i(vξ − ½xη)` in coordinates `(x, v, ξ, η)`.
pub fn kfp() -> QuadraticForm {
    let z = c64(0.0, 0.0);
    let h = c64(0.5, 0.0);
    let q = from_rows(&[
        &[z, z, z, -I * 0.25],
        &[z, h, I * 0.5, z],
        &[z, I * 0.5, z, z],
        &[-I * 0.25, z, z, h],
    ]);
    QuadraticForm { n: 2, q }
}

/// `Σ r_j (x_j² + ξ_j²)`.
pub fn harmonic(r: &[f64]) -> QuadraticForm {
    let d: Vec<Complex64> = r.iter().chain(r.iter()).map(|&x| c64(x, 0.0)).collect();
    QuadraticForm { n: r.len(), q: diag(&d) }
}

/// `[[2i, 1], [0, 2i + ε]]`.
pub fn jordan_m(eps: f64) -> CMatrix {
    from_rows(&[&[c64(0.0, 2.0), c64(1.0, 0.0)], &[c64(0.0, 0.0), c64(eps, 2.0)]])
}

/// `G_ε = [[1, 1], [0, ε]]`, diagonalizing [`jordan_m`] for `ε ≠ 0`.
pub fn jordan_g(eps: f64) -> CMatrix {
    from_rows(&[&[c64(1.0, 0.0), c64(1.0, 0.0)], &[c64(0.0, 0.0), c64(eps, 0.0)]])
}

/// Upper-left block of the reduced KFP Hamilton map (times two).
pub fn kfp_m1() -> CMatrix {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    from_rows(&[&[c64(0.0, 0.0), I * s], &[-I * s, I]])
}

/// `G_KFP = [[(1+i)/√2, (1−i)/√2], [1, 1]]`.
pub fn kfp_g() -> CMatrix {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    from_rows(&[&[c64(s, s), c64(s, -s)], &[c64(1.0, 0.0), c64(1.0, 0.0)]])
}

/// The canonical map `(x, ξ) ↦ (x − iξ, (ξ − ix)/2)` sending
/// `{ξ = ix}` to `{ξ = 0}` and `{ξ = −ix}` to `{x = 0}`.
pub fn kappa_i(n: usize) -> CMatrix {
    let id = identity(n);
    block2(&id, &(-&id * I), &(-&id * (I * 0.5)), &(&id * c64(0.5, 0.0)))
}

/// The symbol on `R^{2n}` whose reduced form is `(Mx)·ξ` with weight
/// `¼|x|²` (Hamilton map `ϰ⁻¹ diag(M/2, −Mᵗ/2) ϰ`).
pub fn from_normal_form(m: &CMatrix) -> QuadraticForm {
    let n = m.nrows();
    let z = CMatrix::zeros(n, n);
    let qt = block2(&z, &m.transpose(), m, &z).scale(0.5);
    QuadraticForm { n, q: qt }.compose(&kappa_i(n))
}

/// Symbol with reduced form `(M_ε x)·ξ`.
pub fn jordan(eps: f64) -> QuadraticForm {
    from_normal_form(&jordan_m(eps))
}

/// Named catalog entry.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "lowercase")]
pub enum Fixture {
    Davies { theta: f64 },
    Kfp,
    Jordan { eps: f64 },
    Harmonic { r: Vec<f64> },
}

impl Fixture {
    pub fn name(&self) -> &'static str {
        match self {
            Fixture::Davies { .. } => "davies",
            Fixture::Kfp => "kfp",
            Fixture::Jordan { .. } => "jordan",
            Fixture::Harmonic { .. } => "harmonic",
        }
    }

    pub fn form(&self) -> QuadraticForm {
        match self {
            Fixture::Davies { theta } => davies(*theta),
            Fixture::Kfp => kfp(),
            Fixture::Jordan { eps } => jordan(*eps),
            Fixture::Harmonic { r } => harmonic(r),
        }
    }

    /// Catalog with default parameters.
    pub fn catalog() -> Vec<Fixture> {
        vec![
            Fixture::Davies { theta: std::f64::consts::FRAC_PI_8 },
            Fixture::Kfp,
            Fixture::Jordan { eps: 0.0 },
            Fixture::Harmonic { r: vec![1.0, std::f64::consts::SQRT_2] },
        ]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matcore::fro;
    use crate::symplectic::{hamilton_map, symplectic_residual};

    #[test]
    fn kappa_i_is_symplectic() {
        for n in 1..4 {
            assert!(symplectic_residual(&kappa_i(n)) < 1e-15);
        }
    }

    #[test]
    fn normal_form_of_scalar_is_harmonic() {
        let q = from_normal_form(&diag(&[c64(0.0, 2.0)]));
        assert!(fro(&(q.q - harmonic(&[1.0]).q)) < 1e-15);
    }

    #[test]
    fn jordan_symbol_has_expected_spectrum() {
        let f = hamilton_map(&jordan(0.5)).f;
        let mut ev = crate::matcore::eigenvalues(&f).unwrap();
        ev.sort_by(|a, b| (a.im, a.re).partial_cmp(&(b.im, b.re)).unwrap());
        let want = [c64(-0.25, -1.0), c64(0.0, -1.0), c64(0.0, 1.0), c64(0.25, 1.0)];
        for (a, b) in ev.iter().zip(want.iter()) {
            assert!((a - b).norm() < 1e-12, "{a} vs {b}");
        }
    }
}
