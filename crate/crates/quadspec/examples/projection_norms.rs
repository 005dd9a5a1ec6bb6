//! Spectral projection norms: closed formula, brute-force Gram oracle and
//! upper bounds, for a few weights.
//!
//! `cargo run --example projection_norms`

use quadspec::matcore::{c64, diag, identity};
use quadspec::normalform::{reduce, weight_from_gc};
use quadspec::spectral::{exact_j_bound, projection_norm_formula, tau_bound, tau_norm_oracle, upper_bound_exact};
use quadspec::{fixtures, Tolerance};

fn main() -> quadspec::Result<()> {
    let tol = Tolerance::default();

    // 1-D weight with C₊ = 0.4: the oracle converges to the formula.
    let phi = weight_from_gc(&identity(1), &diag(&[c64(0.4, 0.0)]));
    println!("{:>3} {:>22} {:>22} {:>8} {:>14}", "N", "formula", "oracle", "D", "upper bound");
    for n in [0u32, 1, 2, 5, 10] {
        let f = projection_norm_formula(&phi, &[n], &tol)?;
        let o = tau_norm_oracle(&phi, &[vec![n]], 8)?;
        println!("{n:>3} {f:>22.15} {:>22.15} {:>8} {:>14.6e}", o.value, o.degree, upper_bound_exact(&phi, &[n], &tol)?);
    }

    // KFP: energy shells are orthogonal, but the norms still grow like e^{0.88|α|}.
    let nf = reduce(&fixtures::kfp(), &tol)?;
    for a in [[0u32, 0], [2, 1], [4, 4]] {
        println!("kfp α={a:?}: ‖Π‖ = {:.15}", projection_norm_formula(&nf.phi2, &a, &tol)?);
    }

    // Bounds on a non-orthogonal weight.
    let nf = reduce(&fixtures::davies(0.3), &tol)?;
    let a = [6u32];
    println!(
        "davies θ=0.3, N=6: norm {:.6}, exact-J bound factor {:.3e}, τ bound {:.3e}",
        projection_norm_formula(&nf.phi2, &a, &tol)?,
        exact_j_bound(&nf.phi2, &a)?,
        tau_bound(&nf.phi2, &[a.to_vec()])?
    );
    Ok(())
}
