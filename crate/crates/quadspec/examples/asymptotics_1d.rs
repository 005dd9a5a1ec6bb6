//! Large-N behaviour of one-dimensional projection norms:
//! `‖Π_N‖ e^{−N g} ≈ c₀ N^{−1/2}`.
//!
//! `cargo run --example asymptotics_1d`

use std::f64::consts::FRAC_PI_8;

use quadspec::normalform::reduce;
use quadspec::spectral::asymptotics_1d;
use quadspec::{fixtures, Tolerance};

fn main() -> quadspec::Result<()> {
    let nf = reduce(&fixtures::davies(FRAC_PI_8), &Tolerance::default())?;
    let c = nf.c_plus[(0, 0)];
    println!("|C₊| = {:.15}", c.norm());
    println!("{:>6} {:>20} {:>20} {:>12}", "N", "scaled norm", "c₀/√N", "rel. error·N");
    for n in [50u32, 100, 200, 400, 800, 1600] {
        let a = asymptotics_1d(c, n)?;
        let rel = a.scaled_norm / a.leading_term - 1.0;
        println!("{n:>6} {:>20.15} {:>20.15} {:>12.6}", a.scaled_norm, a.leading_term, rel * n as f64);
    }
    Ok(())
}
