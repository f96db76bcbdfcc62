//! A fake pole off the critical line shows up as a jump in I(eps), and the
//! size of the jump gives back the real part of its residue.

use rhxi::sweep::{default_grid, inject_pole, residue_from_jump, sweep_with, SweepOptions};
use rhxi::{Complex, PrecisionContext};

fn main() -> rhxi::Result<()> {
    let ctx = PrecisionContext::new(256, 1e-8)?;
    let prec = ctx.precision_bits();
    for c in [0.01, 0.02] {
        let f = inject_pole(Complex::from_f64(prec, c, 0.0), Complex::from_f64(prec, 0.75, 10.0))?;
        let result = sweep_with(&f, &default_grid(), &ctx, &SweepOptions::default())?;
        println!("c = {c}: {} jump(s)", result.jumps.len());
        for j in &result.jumps {
            let est = residue_from_jump(j, &result);
            println!(
                "  between eps = {} and {}: delta = {:.12}, Re residue = {:.12} (+- {:.1e}), significance {:.1e}",
                j.eps_lo,
                j.eps_hi,
                j.delta.to_f64(),
                est.residue.re.to_f64(),
                est.err_bound,
                j.significance
            );
        }
    }
    Ok(())
}
