//! Enumerate eigenvalues `μ_α = (h/i)Σ(2α_j + 1)λ_j` and their collisions.
//!
//! `cargo run --example lattice`

use quadspec::fixtures;
use quadspec::normalform::reduce;
use quadspec::spectral::{enumerate_lattice, COLLISION_TOL};
use quadspec::Tolerance;

fn main() -> quadspec::Result<()> {
    let tol = Tolerance::default();
    for (name, q) in [("kfp", fixtures::kfp()), ("harmonic (1,1)", fixtures::harmonic(&[1.0, 1.0]))] {
        let nf = reduce(&q, &tol)?;
        println!("{name}:");
        for p in enumerate_lattice(&nf.lambdas, 4.5, 1.0, COLLISION_TOL)? {
            println!("  μ = {:>8.4} {:+.4}i  multiplicity {}  {:?}", p.mu.re, p.mu.im, p.multiplicity(), p.alphas);
        }
    }
    Ok(())
}
