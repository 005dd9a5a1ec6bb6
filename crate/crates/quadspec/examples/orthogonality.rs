//! Two equivalent tests for the reduced weight `Φ₂` to be free of a
//! pluriharmonic part (so that the energy shells are mutually orthogonal):
//! `Λ⁺ = conj(Λ⁻)`, and `Φ₂″_xx = 0`.
//!
//! `cargo run --example orthogonality`

use quadspec::spectral::orthogonality_test;
use quadspec::{fixtures, Tolerance};

fn main() -> quadspec::Result<()> {
    let tol = Tolerance::default();
    for (name, q) in [
        ("harmonic", fixtures::harmonic(&[1.0, 2f64.sqrt()])),
        ("kfp", fixtures::kfp()),
        ("davies θ=0.3", fixtures::davies(0.3)),
        ("jordan ε=0.5", fixtures::jordan(0.5)),
    ] {
        let e = orthogonality_test(&q, &tol)?;
        println!(
            "{name:<14} orthogonal={:<5} dist(Λ⁺, conj Λ⁻)={:.2e}  |Φ″_xx|/|Φ″_x̄x|={:.2e}  agree={}",
            e.orthogonal, e.manifold_distance, e.pluriharmonic_size, e.criteria_agree
        );
    }
    Ok(())
}
