use std::f64::consts::{FRAC_PI_8, SQRT_2};

use super::*;
use crate::fixtures;
use crate::matcore::{diag, from_rows, I};
use crate::normalform::{reduce, weight_from_gc};
use crate::testutil::{random_weight, rng};

fn tol() -> Tolerance {
    Tolerance::default()
}

fn davies_phi1(theta: f64) -> QuadraticWeight {
    reduce(&fixtures::davies(theta), &tol()).unwrap().phi1()
}

fn phi_c(c: f64) -> QuadraticWeight {
    weight_from_gc(&identity(1), &diag(&[c64(c, 0.0)]))
}

#[test]
fn mu_examples() {
    for n in 0..6 {
        let z = mu(&[I], &[n], 1.0);
        assert!((z - c64(2.0 * n as f64 + 1.0, 0.0)).norm() < 1e-15);
    }
    let l = [c64(0.25, 0.25), c64(-0.25, 0.25)];
    assert!((mu(&l, &[0, 0], 1.0) - c64(0.5, 0.0)).norm() < 1e-15);
    // (h/i)(3λ₁ + λ₂) = −i(−0.5 + i) ... with λ = ±¼ + i/4
    assert!((mu(&l, &[1, 0], 1.0) - c64(1.0, -0.5)).norm() < 1e-15);
    assert!((mu(&[I], &[2], 0.1) - c64(0.5, 0.0)).norm() < 1e-15);
}

#[test]
fn lattice_examples() {
    let pts = enumerate_lattice(&[I], 10.0, 1.0, COLLISION_TOL).unwrap();
    let mus: Vec<f64> = pts.iter().map(|p| p.mu.re).collect();
    assert_eq!(mus, vec![1.0, 3.0, 5.0, 7.0, 9.0]);
    assert!(pts.iter().all(|p| p.simple));

    let pts = enumerate_lattice(&[I, I * SQRT_2], 10.0, 1.0, COLLISION_TOL).unwrap();
    assert!(pts.len() > 5 && pts.iter().all(|p| p.simple));

    let pts = enumerate_lattice(&[I, I], 7.0, 1.0, COLLISION_TOL).unwrap();
    let mus: Vec<f64> = pts.iter().map(|p| p.mu.re).collect();
    assert_eq!(mus, vec![2.0, 4.0, 6.0]);
    assert_eq!(pts[1].alphas, vec![vec![1, 0], vec![0, 1]]);
    assert!(!pts[1].simple);
    // multiplicity of μ = 2(k+1) is k+1
    assert!(pts.iter().enumerate().all(|(k, p)| p.multiplicity() == k + 1));

    assert!(enumerate_lattice(&[c64(1.0, 0.0)], 10.0, 1.0, COLLISION_TOL).is_err());
}

#[test]
fn lattice_is_complete() {
    // brute force over a generous box
    let l = [c64(0.3, 1.0), c64(-0.2, 0.7)];
    let (r, h) = (6.0, 0.5);
    let pts = enumerate_lattice(&l, r, h, COLLISION_TOL).unwrap();
    let count: usize = pts.iter().map(|p| p.alphas.len()).sum();
    let mut want = 0;
    for a in 0..40 {
        for b in 0..40 {
            if mu(&l, &[a, b], h).norm() <= r {
                want += 1;
            }
        }
    }
    assert_eq!(count, want);
}

#[test]
fn taylor_projection_examples() {
    let mut u = Poly::one(1);
    u.add_term(vec![1], c64(1.0, 0.0));
    u.add_term(vec![2], c64(1.0, 0.0));
    let p = taylor_projection(&u, &[vec![1]]);
    assert_eq!(p, Poly::monomial(vec![1], c64(1.0, 0.0)));
    assert_eq!(taylor_projection(&p, &[vec![1]]), p);
    assert_eq!(taylor_projection(&u, &[]), Poly::zero(1));
}

#[test]
fn oracle_normal_weights() {
    for s in [vec![vec![0, 0]], vec![vec![2, 1]], vec![vec![1, 0], vec![0, 1]]] {
        let v = tau_norm_at(&QuadraticWeight::phi0(2), &s, 6).unwrap();
        assert!((v - 1.0).abs() < 1e-12, "{v}");
        let v = tau_norm_at(&QuadraticWeight::radial_diagonal(&[1.0, 3.0]), &s, 6).unwrap();
        assert!((v - 1.0).abs() < 1e-12, "{v}");
    }
}

#[test]
fn oracle_matches_formula() {
    // |C₊| = √2/2: the moments run out of digits near d = 40
    let phi = davies_phi1(FRAC_PI_8);
    let f = projection_norm_formula(&phi, &[2], &tol()).unwrap();
    let v = tau_norm_at(&phi, &[vec![2]], 40).unwrap();
    assert!((v - f).abs() < 1e-4 * f, "{v} vs {f}");
    let r = tau_norm_oracle(&phi, &[vec![2]], 8).unwrap();
    assert!(r.floor_reached && (r.value - f).abs() < 1e-3 * f, "{r:?}");

    let phi = phi_c(0.5);
    let f5 = projection_norm_formula(&phi, &[5], &tol()).unwrap();
    let r = tau_norm_oracle(&phi, &[vec![5]], 8).unwrap();
    assert!(r.converged, "{r:?}");
    assert!((r.value - f5).abs() < 1e-6 * f5, "{} vs {f5}", r.value);
}

#[test]
fn oracle_is_monotone_in_degree() {
    let mut g = rng(17);
    let phi = random_weight(&mut g, 2, 0.4);
    let s = vec![vec![1, 1]];
    let vals: Vec<f64> = (2..=8).map(|d| tau_norm_at(&phi, &s, d).unwrap()).collect();
    for w in vals.windows(3) {
        assert!(w[1] >= w[0] * (1.0 - 1e-12) && w[2] >= w[1] * (1.0 - 1e-12), "{vals:?}");
    }
}

#[test]
fn formula_normal_cases() {
    let t = tol();
    for a in [[0u32, 0], [3, 1], [0, 5]] {
        let v = projection_norm_formula(&QuadraticWeight::phi0(2), &a, &t).unwrap();
        assert!((v - 1.0).abs() < 1e-10);
        let v = projection_norm_formula(&QuadraticWeight::radial_diagonal(&[1.0, 2.5]), &a, &t).unwrap();
        assert!((v - 1.0).abs() < 1e-10, "{v}");
    }
}

/// Legendre `P_N(x)` by the three-term recurrence.
fn legendre(n: u32, x: f64) -> f64 {
    let (mut p0, mut p1) = (1.0, x);
    if n == 0 {
        return 1.0;
    }
    for k in 1..n {
        let k = k as f64;
        let p2 = ((2.0 * k + 1.0) * x * p1 - k * p0) / (k + 1.0);
        p0 = p1;
        p1 = p2;
    }
    p1
}

#[test]
fn one_dimensional_norms() {
    let t = tol();
    for c in [0.1, 0.5, FRAC_PI_8.sin() * SQRT_2, 0.8] {
        for n in [0u32, 1, 4, 9] {
            let direct = ln_projection_norm(&phi_c(c), &[n], &t).unwrap();
            let circle = ln_projection_norm_1d(c, n).unwrap();
            assert!((direct - circle).abs() < 1e-10, "c={c} n={n}");
            // circle average of (1 − c cos φ)^{−N−1} = (1−c²)^{−(N+1)/2} P_N(1/√(1−c²))
            let s = 1.0 - c * c;
            let ln_i = -0.5 * (n as f64 + 1.0) * s.ln() + legendre(n, 1.0 / s.sqrt()).ln();
            let closed = 0.25 * (2.0 * n as f64 + 1.0) * s.ln() + ln_i;
            assert!((closed - circle).abs() < 1e-11, "c={c} n={n}");
        }
    }
    // G is irrelevant
    let g = from_rows(&[&[c64(0.3, 1.1)]]);
    let phi = weight_from_gc(&g, &diag(&[c64(0.0, 0.6)]));
    let v = ln_projection_norm(&phi, &[7], &t).unwrap();
    assert!((v - ln_projection_norm_1d(0.6, 7).unwrap()).abs() < 1e-10);
}

#[test]
fn bounds_dominate() {
    let t = tol();
    let mut g = rng(5);
    for _ in 0..4 {
        let phi = random_weight(&mut g, 2, 0.4);
        for a in [vec![0, 0], vec![1, 2], vec![3, 0]] {
            let j = weights::j_factor(&phi, &a).unwrap();
            assert!(j <= exact_j_bound(&phi, &a).unwrap() * (1.0 + 1e-8));
            let f = projection_norm_formula(&phi, &a, &t).unwrap();
            assert!(f >= 1.0 - 1e-9);
            assert!(f <= upper_bound_exact(&phi, &a, &t).unwrap() * (1.0 + 1e-8));
            assert!(f <= tau_bound(&phi, &[a.clone()]).unwrap() * (1.0 + 1e-9));
        }
    }
    let phi = davies_phi1(FRAC_PI_8);
    let c = (2.0 * FRAC_PI_8).sin();
    for n in 0..5 {
        let b = exact_j_bound(&phi, &[n]).unwrap();
        assert!((b - (1.0 - c).powi(-(n as i32) - 1)).abs() < 1e-10 * b);
        let tb = tau_bound(&phi, &[vec![n]]).unwrap();
        assert!((tb - ((1.0 + c) / (1.0 - c)).powf(0.5 * (1.0 + n as f64))).abs() < 1e-10 * tb);
    }
    assert!((tau_bound(&QuadraticWeight::phi0(2), &[vec![4, 4]]).unwrap() - 1.0).abs() < 1e-15);
}

#[test]
fn asymptotics_davies() {
    let c = c64(-0.5, -0.5);
    for n in [50u32, 200] {
        let a = asymptotics_1d(c, n).unwrap();
        assert!((a.scaled_norm / a.leading_term - 1.0).abs() <= 5.0 / n as f64, "{a:?}");
    }
    assert!(matches!(asymptotics_1d(c64(0.0, 0.0), 10), Err(Error::DegenerateCplus(_))));
    // c₀ at |C₊| = ½ against the large-N limit
    let a = asymptotics_1d(c64(0.5, 0.0), 20000).unwrap();
    assert!((a.c0 - 3f64.powf(0.25) / PI.sqrt()).abs() < 1e-14);
    assert!((a.scaled_norm * (20000f64).sqrt() / a.c0 - 1.0).abs() < 1e-3);
}

#[test]
fn growth_rate_examples() {
    let t = tol();
    let g0 = growth_rate(&QuadraticWeight::phi0(2), &[0.5, 0.5], &t).unwrap();
    assert!(g0.g.abs() < 1e-9 && (g0.entropy - 2f64.ln()).abs() < 1e-15);
    let g0 = growth_rate(&QuadraticWeight::phi0(2), &[1.0, 0.0], &t).unwrap();
    assert!(g0.g.abs() < 1e-9 && g0.entropy == 0.0);

    for theta in [0.1, 0.4] {
        let s = (2.0 * theta as f64).sin();
        let g = growth_rate(&davies_phi1(theta), &[1.0], &t).unwrap();
        assert!((g.g - 0.5 * ((1.0 + s) / (1.0 - s)).ln()).abs() < 1e-9);
    }

    let phi = QuadraticWeight::from_g(&fixtures::kfp_g());
    let g = growth_rate(&phi, &[0.5, 0.5], &t).unwrap();
    assert!((g.g - 0.8813735870195).abs() < 1e-6, "{g:?}");
    assert!(growth_rate(&phi, &[0.6, 0.6], &t).is_err());
}

#[test]
fn growth_rate_one_dimensional_consistency() {
    let t = tol();
    for k in 1..=10 {
        let c = 0.095 * k as f64 - 0.05;
        let phase = Complex64::from_polar(1.0, 0.7 * k as f64);
        let phi = weight_from_gc(&diag(&[c64(1.3, -0.2)]), &diag(&[phase * c]));
        let g = growth_rate(&phi, &[1.0], &t).unwrap();
        assert!((g.g - 0.5 * ((1.0 + c) / (1.0 - c)).ln()).abs() < 1e-9, "c={c}: {}", g.g);
    }
}

#[test]
fn degenerate_point_uses_oracle() {
    let t = tol();
    let pts = enumerate_lattice(&[I, I], 7.0, 1.0, COLLISION_TOL).unwrap();
    let r = projection_report(&QuadraticWeight::radial_diagonal(&[1.0, 2.0]), &pts[1], &ReportOptions::default(), &t)
        .unwrap();
    assert!(r.norm_formula.is_none());
    assert!((r.oracle.unwrap() - 1.0).abs() < 1e-10);

    let nf = reduce(&fixtures::davies(0.2), &t).unwrap();
    let pts = enumerate_lattice(&nf.lambdas, 8.0, 1.0, COLLISION_TOL).unwrap();
    let opts = ReportOptions { oracle: true, growth: true, ..ReportOptions::default() };
    let r = eigen_projection_norm(&nf, &pts[2], &opts, &t).unwrap();
    assert!((r.mu - c64(5.0, 0.0)).norm() < 1e-10);
    assert!((r.norm - r.oracle.unwrap()).abs() < 1e-6 * r.norm);
    assert!(r.growth_rate.unwrap() > 0.0);
}

#[test]
fn orthogonality_fixtures() {
    let t = tol();
    let e = orthogonality_test(&fixtures::kfp(), &t).unwrap();
    assert!(e.orthogonal && e.criteria_agree, "{e:?}");
    let e = orthogonality_test(&fixtures::davies(FRAC_PI_8), &t).unwrap();
    assert!(!e.orthogonal && e.criteria_agree, "{e:?}");
    let e = orthogonality_test(&fixtures::davies(0.0), &t).unwrap();
    assert!(e.orthogonal && e.criteria_agree, "{e:?}");
}
