//! Reduce symbols to the normal form `(Mx)·ξ` on `H_{Φ₂}`.
//!
//! `cargo run --example normal_form`

use std::f64::consts::FRAC_PI_8;

use quadspec::fixtures;
use quadspec::io::to_json;
use quadspec::normalform::reduce;
use quadspec::Tolerance;

fn main() -> quadspec::Result<()> {
    let tol = Tolerance::default();

    let nf = reduce(&fixtures::davies(FRAC_PI_8), &tol)?;
    println!("davies θ=π/8: λ = {}, C₊ = {}", nf.lambdas[0], nf.c_plus[(0, 0)]);

    let nf = reduce(&fixtures::kfp(), &tol)?;
    println!("kfp: λ = {:?}", nf.lambdas);
    println!("kfp: A₋ diagonal = {:?}", nf.a_minus.diagonal().as_slice());
    println!("kfp: |C₊| = {:.2e} (Φ₂ has no pluriharmonic part)", nf.c_plus.norm());
    println!("kfp: residuals decouple {:.1e}, spectrum {:.1e}", nf.decoupling_residual, nf.spectrum_residual);

    // Jordan block: M keeps the off-diagonal 1 and γ marks the chain.
    let nf = reduce(&fixtures::jordan(0.0), &tol)?;
    println!("jordan ε=0: M = {}  γ = {:?}", nf.m, nf.gammas);

    // The full record, as written by `quadspec reduce`.
    print!("{}", to_json(&reduce(&fixtures::harmonic(&[1.0]), &tol)?)?);
    Ok(())
}
