//! zeta, log-gamma and xi at a few points, with their error bounds.

use rhxi::special::{f_ratio, log_gamma, xi, xi_symmetry_residual, zeta};
use rhxi::{Complex, PrecisionContext};

fn main() -> rhxi::Result<()> {
    let ctx = PrecisionContext::new(256, 1e-30)?;
    let c = |re: f64, im: f64| Complex::from_f64(ctx.precision_bits(), re, im);

    for (label, s) in [("zeta(2)", c(2.0, 0.0)), ("zeta(0)", c(0.0, 0.0)), ("zeta(1/2)", c(0.5, 0.0)), ("zeta(1/2+14i)", c(0.5, 14.0))] {
        let r = zeta(&s, &ctx)?;
        println!("{label:>16} = {}  (err {:.1e})", r.value, r.err_bound);
    }
    let r = log_gamma(&c(0.25, 0.0), &ctx)?;
    println!("{:>16} = {}  (err {:.1e})", "ln Gamma(1/4)", r.value, r.err_bound);
    for x in [0.0, 1.0, 2.0, 4.0] {
        let r = xi(&c(x, 0.0), &ctx)?;
        println!("{:>16} = {}", format!("xi({x})"), r.value);
    }
    let f = f_ratio(&c(2.0, 0.0), &ctx)?;
    println!("{:>16} = {}  (2 pi/5 = {:.20})", "f(2)", f.value, 2.0 * std::f64::consts::PI / 5.0);
    let s = c(0.3, 25.0);
    println!("|xi(s) - xi(1-s)| at {s}: {:.1e}", xi_symmetry_residual(&s, &ctx)?);
    Ok(())
}
