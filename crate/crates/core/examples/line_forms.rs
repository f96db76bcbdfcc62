//! I(eps) from the half-line real-part form and from the full two-sided
//! line integral, plus the effect of doubling the truncation height.

use rhxi::quadrature::{i_of_eps, i_of_eps_two_sided, reference_value, IntegralOptions, RatioIntegrand};
use rhxi::PrecisionContext;
use rug::Float;

fn main() -> rhxi::Result<()> {
    let ctx = PrecisionContext::new(256, 1e-10)?;
    let opts = IntegralOptions::default();
    let reference = reference_value(&ctx, &opts)?;
    println!("reference (sigma = 3/2): {:.15} +- {:.1e}", reference.value.to_f64(), reference.total_err());
    for eps in [0.1, 0.25, 0.45] {
        let half = i_of_eps(eps, &ctx, &opts)?;
        let full = i_of_eps_two_sided(&RatioIntegrand::exact(), eps, &ctx, &opts)?;
        let doubled = i_of_eps(eps, &ctx, &opts.clone().with_t(2.0 * half.t_used))?;
        let d = |a: &Float, b: &Float| Float::with_val(256, a - b).abs().to_f64();
        println!(
            "eps = {eps}: I = {:.15} (T = {}), two-sided diff {:.1e}, T -> 2T diff {:.1e} (tail bound {:.1e})",
            half.value.to_f64(),
            half.t_used,
            d(&half.value, &full.value),
            d(&half.value, &doubled.value),
            half.tail_err
        );
    }
    Ok(())
}
