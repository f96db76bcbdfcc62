//! The integral of xi along Re s = 1/2 + eps does not depend on eps and has a
//! closed form in Gamma(1/4).

use rhxi::quadrature::{closed_form_j, j_of_eps, j_of_eps_two_sided, IntegralOptions};
use rhxi::PrecisionContext;
use rug::Float;

fn main() -> rhxi::Result<()> {
    let ctx = PrecisionContext::new(256, 1e-12)?;
    let opts = IntegralOptions::default();
    let exact = closed_form_j(&ctx);
    println!("closed form  {}", exact.to_string_radix(10, Some(40)));
    for eps in [0.0, 0.1, 0.3, 0.7] {
        let r = j_of_eps(eps, &ctx, &opts)?;
        let diff = Float::with_val(256, &r.value - &exact).abs().to_f64();
        println!(
            "eps = {eps:<4} J = {}  |diff| = {diff:.2e}  bound = {:.2e}  T = {}",
            r.value.to_string_radix(10, Some(25)),
            r.total_err(),
            r.t_used
        );
    }
    let full = j_of_eps_two_sided(0.1, &ctx, &opts)?;
    let diff = Float::with_val(256, &full.value - &exact).abs().to_f64();
    println!("two-sided at eps = 0.1: |diff| = {diff:.2e}  bound = {:.2e}", full.total_err());
    Ok(())
}
