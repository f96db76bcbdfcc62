//! Zeros of Xi(t) = xi(1/2 + it) up to a height, and the divisor check of f
//! on each of them.

use rhxi::special::f_ratio;
use rhxi::zeros::{scan_zeros, smooth_zero_count, DEFAULT_SCAN_STEP};
use rhxi::{Complex, Error, PrecisionContext};

fn main() -> rhxi::Result<()> {
    let t_max: f64 = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(60.0);
    let ctx = PrecisionContext::new(256, 1e-12)?;
    let zeros = scan_zeros(t_max, DEFAULT_SCAN_STEP, &ctx)?;
    println!("{} zeros below {t_max} (smooth count {:.2})", zeros.len(), smooth_zero_count(t_max));
    for (g, r) in zeros.ordinates.iter().zip(&zeros.radii) {
        let rho = Complex::new(ctx.float(0.5), g.clone());
        let flagged = matches!(f_ratio(&rho, &ctx), Err(Error::NearZeroDivisor { .. }));
        println!("{}  +- {r:.1e}  divisor flagged: {flagged}", g.to_string_radix(10, Some(22)));
    }
    for w in &zeros.warnings {
        println!("warning: {w}");
    }
    Ok(())
}
