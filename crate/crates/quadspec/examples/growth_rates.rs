//! Exponential growth rates `g(β, Φ)` compared with closed forms and with
//! the condition-number bound `log(‖G‖‖G⁻¹‖)`.
//!
//! `cargo run --example growth_rates`

use quadspec::matcore::condition_number;
use quadspec::normalform::reduce;
use quadspec::spectral::growth_rate;
use quadspec::weights::QuadraticWeight;
use quadspec::{fixtures, Tolerance};

fn main() -> quadspec::Result<()> {
    let tol = Tolerance::default();

    println!("davies: g vs ½log((1+sin2θ)/(1−sin2θ))");
    for k in 1..=7 {
        let theta = 0.1 * k as f64;
        let g = growth_rate(&reduce(&fixtures::davies(theta), &tol)?.phi1(), &[1.0], &tol)?;
        let s = (2.0 * theta).sin();
        println!("  θ={theta:.1} g={:.12} closed form {:.12}", g.g, 0.5 * ((1.0 + s) / (1.0 - s)).ln());
    }

    let g = fixtures::kfp_g();
    let r = growth_rate(&QuadraticWeight::from_g(&g), &[0.5, 0.5], &tol)?;
    println!("kfp: g = {:.13}, log cond G = {:.13}", r.g, condition_number(&g).ln());

    println!("jordan: relative gap to log cond G_ε");
    for eps in [(-6f64).exp(), 0.01, 0.1, 0.5, 1.0] {
        let g = fixtures::jordan_g(eps);
        let r = growth_rate(&QuadraticWeight::from_g(&g), &[0.5, 0.5], &tol)?;
        let lc = condition_number(&g).ln();
        println!("  ε={eps:.5} g={:.10} gap={:.3e}", r.g, (lc - r.g) / lc);
    }
    Ok(())
}
