//! Property tests for the structural identities the library relies on.

use num_complex::Complex64;
use proptest::prelude::*;
use quadspec::matcore::{self, c64, fro, identity, CMatrix};
use quadspec::multiindex;
use quadspec::normalform::{aplus_from_cplus, cplus_from_aplus, gc_from_weight, weight_from_gc};
use quadspec::spectral::{self, projection_norm_formula};
use quadspec::symplectic::{antisymmetry_residual, form_from_hamilton, hamilton_map, QuadraticForm};
use quadspec::weights::{self, QuadraticWeight};
use quadspec::Tolerance;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn tol() -> Tolerance {
    Tolerance::default()
}

fn random_complex(r: &mut ChaCha8Rng, rows: usize, cols: usize) -> CMatrix {
    CMatrix::from_fn(rows, cols, |_, _| c64(r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0)))
}

fn random_c_plus(r: &mut ChaCha8Rng, n: usize, cmax: f64) -> CMatrix {
    let u = random_complex(r, n, n).qr().q();
    let s: Vec<Complex64> = (0..n).map(|_| c64(r.gen_range(0.0..cmax), 0.0)).collect();
    &u * matcore::diag(&s) * u.transpose()
}

fn random_weight(seed: u64, n: usize, cmax: f64) -> QuadraticWeight {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    let g = random_complex(&mut r, n, n).scale(0.5) + identity(n);
    let c = random_c_plus(&mut r, n, cmax);
    weight_from_gc(&g, &c)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn hamilton_map_is_antisymmetric(seed in any::<u64>(), n in 1usize..4) {
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let a = random_complex(&mut r, 2 * n, 2 * n);
        let q = QuadraticForm::new(matcore::symmetrize(&a), &tol()).unwrap();
        let f = hamilton_map(&q);
        prop_assert!(antisymmetry_residual(&f.f) <= 1e-13);
        prop_assert!(fro(&(form_from_hamilton(&f.f).q - &q.q)) <= 1e-13);
    }

    #[test]
    fn weight_round_trips_through_g_and_c(seed in any::<u64>(), n in 1usize..4) {
        let phi = random_weight(seed, n, 0.8);
        let (g, c) = gc_from_weight(&phi, &tol()).unwrap();
        prop_assert!(weight_from_gc(&g, &c).distance(&phi) <= 1e-11);
        prop_assert!(fro(&(&c - c.transpose())) <= 1e-11);
    }

    #[test]
    fn a_plus_and_c_plus_are_inverse_maps(seed in any::<u64>(), n in 1usize..4) {
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let c = random_c_plus(&mut r, n, 0.9);
        let a = aplus_from_cplus(&c, &tol()).unwrap();
        let back = cplus_from_aplus(&a, &tol()).unwrap();
        prop_assert!(fro(&(back - &c)) <= 1e-10);
    }

    #[test]
    fn dual_weight_keeps_the_determinant(seed in any::<u64>(), n in 1usize..4) {
        let phi = random_weight(seed, n, 0.8);
        let d = weights::dual_weight_data(&phi, &tol()).unwrap();
        let x = weights::det_one_minus(&d.c_plus);
        let y = weights::det_one_minus(&d.c_dagger);
        prop_assert!((x - y).abs() <= 1e-10 * x.max(1e-3));
        prop_assert!(x > 0.0 && x <= 1.0 + 1e-12);
    }

    #[test]
    fn one_dim_oracle_matches_formula(seed in any::<u64>(), k in 0u32..5) {
        let phi = random_weight(seed, 1, 0.5);
        let want = projection_norm_formula(&phi, &[k], &tol()).unwrap();
        let got = spectral::tau_norm_oracle(&phi, &[vec![k]], 8).unwrap();
        // truncations approach the norm from below
        prop_assert!(got.converged || got.floor_reached);
        prop_assert!(got.value <= want * (1.0 + 1e-10));
        prop_assert!(want - got.value <= 1e-7 * want, "{} vs {}", got.value, want);
    }

    #[test]
    fn shells_have_the_expected_size(n in 1usize..5, m in 0u32..7) {
        let h = multiindex::homogeneous(n, m);
        prop_assert_eq!(h.len(), multiindex::shell_dim(n, m));
        prop_assert!(h.iter().all(|a| multiindex::order(a) == m));
    }
}

// The sphere integrals behind the exact formula are adaptive quadratures;
// keep these few.
proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn projection_norms_are_at_least_one(seed in any::<u64>(), n in 1usize..3) {
        let phi = random_weight(seed, n, 0.7);
        for a in multiindex::graded(n, 3) {
            let p = projection_norm_formula(&phi, &a, &tol()).unwrap();
            prop_assert!(p >= 1.0 - 1e-12, "{a:?}: {p}");
        }
    }

    #[test]
    fn projection_norms_are_scale_invariant(seed in any::<u64>(), r2 in 0.1f64..10.0) {
        let phi = random_weight(seed, 2, 0.7);
        for a in multiindex::graded(2, 2) {
            let p = projection_norm_formula(&phi, &a, &tol()).unwrap();
            let s = projection_norm_formula(&phi.scaled(r2), &a, &tol()).unwrap();
            prop_assert!((p - s).abs() <= 1e-10 * p);
        }
    }

    #[test]
    fn radial_weights_give_orthogonal_projections(r in prop::collection::vec(0.2f64..5.0, 1..3)) {
        let phi = QuadraticWeight::radial_diagonal(&r);
        for a in multiindex::graded(r.len(), 4) {
            let p = projection_norm_formula(&phi, &a, &tol()).unwrap();
            prop_assert!((p - 1.0).abs() <= 1e-12);
        }
    }
}
