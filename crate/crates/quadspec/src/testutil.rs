//! Random matrices and weights shared by unit tests.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::matcore::{c64, identity, CMatrix};
use crate::normalform::weight_from_gc;
use crate::weights::QuadraticWeight;

pub fn rng(seed: u64) -> ChaCha8Rng {
    use rand::SeedableRng;
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_complex(rng: &mut ChaCha8Rng, r: usize, c: usize) -> CMatrix {
    CMatrix::from_fn(r, c, |_, _| c64(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
}

pub fn random_unitary(rng: &mut ChaCha8Rng, n: usize) -> CMatrix {
    random_complex(rng, n, n).qr().q()
}

/// `C = U diag(s) Uᵗ` with singular values in `[0, cmax]`.
pub fn random_cplus(rng: &mut ChaCha8Rng, n: usize, cmax: f64) -> CMatrix {
    let u = random_unitary(rng, n);
    let s: Vec<_> = (0..n).map(|_| c64(rng.gen_range(0.0..cmax), 0.0)).collect();
    &u * crate::matcore::diag(&s) * u.transpose()
}

pub fn random_weight(rng: &mut ChaCha8Rng, n: usize, cmax: f64) -> QuadraticWeight {
    let g = random_complex(rng, n, n).scale(0.5) + identity(n);
    let c = random_cplus(rng, n, cmax);
    weight_from_gc(&g, &c)
}
