//! Classify the catalog symbols: elliptic, partially elliptic or neither.
//!
//! `cargo run --example classify`

use quadspec::fixtures::{self, Fixture};
use quadspec::symplectic::{classify, hamilton_map, singular_space_dims};
use quadspec::Tolerance;

fn main() {
    let tol = Tolerance::default();
    for f in Fixture::catalog() {
        let q = f.form();
        let c = classify(&q, &tol);
        println!("{:<9} n={} {:<18} k0={:?} min Re q = {:+.3e}", f.name(), q.n, c.kind.to_string(), c.k0, c.min_re_q);
    }

    // Davies is elliptic only for |θ| < π/4.
    for theta in [0.3, 0.7, 0.8] {
        println!("davies θ={theta}: {}", classify(&fixtures::davies(theta), &tol).kind);
    }

    // KFP: Re q vanishes on a 2-dim space, which shrinks to {0} after one step.
    let f = hamilton_map(&fixtures::kfp());
    println!("kfp singular-space dims: {:?}", singular_space_dims(&f.f, &tol));
}
