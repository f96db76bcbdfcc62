//! I(eps) over 0.02..0.48 against the reference line Re s = 3/2, written as a
//! CSV table and an SVG plot.
//!
//! cargo run --release --example flat_sweep -- [out_dir]

use std::fs::File;
use std::path::PathBuf;

use rhxi::report::{read_csv, render_svg, write_csv, decimal_digits};
use rhxi::sweep::{default_grid, sweep, SweepOptions};
use rhxi::PrecisionContext;

fn main() -> rhxi::Result<()> {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| ".".into()));
    let ctx = PrecisionContext::new(256, 1e-8)?;
    let result = sweep(&default_grid(), &ctx, &SweepOptions::default())?;

    println!("reference = {:.15}  (err {:.1e})", result.reference.to_f64(), result.reference_err);
    for i in 0..result.len() {
        println!(
            "eps = {:.2}  I = {:.15}  err = {:.1e}  T = {}",
            result.eps_grid[i],
            result.values[i].to_f64(),
            result.err_bounds[i],
            result.t_used[i]
        );
    }
    println!("jumps: {}", result.jumps.len());
    println!("max |I - ref| / bound = {:.3}", result.worst_consistency_ratio());

    std::fs::create_dir_all(&dir)?;
    let csv_path = dir.join("sweep.csv");
    write_csv(&result, decimal_digits(ctx.precision_bits()), File::create(&csv_path)?)?;
    let svg = render_svg(&read_csv(File::open(&csv_path)?)?)?;
    std::fs::write(dir.join("sweep.svg"), svg)?;
    println!("wrote {} and sweep.svg", csv_path.display());
    Ok(())
}
