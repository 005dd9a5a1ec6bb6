//! The basis dual to the monomials and the dual weight `Φ†`.
//!
//! `cargo run --example dual_basis`

use quadspec::matcore::{c64, from_rows};
use quadspec::normalform::weight_from_gc;
use quadspec::weights::{biorthogonality_defect, dual_basis, dual_weight, dual_weight_data};
use quadspec::Tolerance;

fn main() -> quadspec::Result<()> {
    let g = from_rows(&[&[c64(1.0, 0.2), c64(0.3, 0.0)], &[c64(-0.1, 0.1), c64(0.9, 0.0)]]);
    let c = from_rows(&[&[c64(0.2, 0.1), c64(0.1, 0.0)], &[c64(0.1, 0.0), c64(-0.3, 0.05)]]);
    let phi = weight_from_gc(&g, &c);

    let d = dual_basis(&phi, &[1, 1])?;
    println!("φ†_(1,1) = {:.4} · p(x) · exp((x, Sx)), p has {} terms", d.c0, d.poly.terms.len());

    let dual = dual_weight(&phi, &Tolerance::default())?;
    println!("Φ†: Pxbx = {:.6}", dual.pxbx);

    // C₊† should come out symmetric; Φ†† = Φ is checked, not assumed
    let data = dual_weight_data(&phi, &Tolerance::default())?;
    let flag = if data.c_dagger_asymmetry > 1e-9 { "  (large)" } else { "" };
    println!("asymmetry of C₊† before symmetrizing: {:.2e}{flag}", data.c_dagger_asymmetry);
    let twice = dual_weight(&dual, &Tolerance::default())?;
    println!("|Φ†† − Φ| = {:.2e}", twice.distance(&phi));

    let e = biorthogonality_defect(&phi, 3, 24)?;
    println!("max |⟨x^β, φ†_α⟩ − δ| over |α|,|β| ≤ 3: {e:.2e}");
    Ok(())
}
