//! Residues of f at the first few zeros, by a circle integral and by
//! xi(2 rho)/xi'(rho).

use rhxi::sweep::{residue_at, residue_by_derivative, residue_on_circle, MAX_CIRCLE_RADIUS};
use rhxi::zeros::{scan_zeros, DEFAULT_SCAN_STEP};
use rhxi::{Complex, PrecisionContext};

fn main() -> rhxi::Result<()> {
    let ctx = PrecisionContext::new(256, 1e-15)?;
    let zeros = scan_zeros(35.0, DEFAULT_SCAN_STEP, &ctx)?;
    for g in zeros.ordinates.iter().take(5) {
        let rho = Complex::new(ctx.float(0.5), g.clone());
        let circle = residue_at(&rho, &ctx)?;
        let smaller = residue_on_circle(&rho, MAX_CIRCLE_RADIUS / 2.0, &ctx)?;
        let deriv = residue_by_derivative(&rho, MAX_CIRCLE_RADIUS, &ctx)?;
        let gap = (circle.residue.clone() - &deriv).hypot_f64();
        let shrink = (circle.residue.clone() - &smaller.residue).hypot_f64();
        println!(
            "gamma = {:.9}  res = {}  |circle - derivative| = {gap:.1e}  |r vs r/2| = {shrink:.1e}",
            g.to_f64(),
            circle.residue
        );
    }
    Ok(())
}
