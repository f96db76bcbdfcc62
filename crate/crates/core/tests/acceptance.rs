//! One line per acceptance criterion; exits non-zero if any fails.

mod common;

use std::fs;
use std::time::Instant;

use common::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rhxi::quadrature::{
    i_of_eps, injected_contribution, j_of_eps, reference_value, IntegralOptions, IntegralResult, RatioIntegrand,
};
use rhxi::report::{build_integrand, cmd_sweep, cmd_xicheck, run, ConfigOverrides, Exit, RunConfig};
use rhxi::special::{f_ratio, xi, xi_symmetry_residual, zeta};
use rhxi::sweep::residue_from_jump;
use rhxi::zeros::{scan_zeros, DEFAULT_SCAN_STEP};
use rhxi::{Complex, Error, PrecisionContext};
use rug::Float;

type Outcome = Result<String, String>;

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn config(bits: u32, tol: f64) -> RunConfig {
    let flags = ConfigOverrides {
        precision_bits: Some(bits),
        target_tol: Some(tol),
        ..Default::default()
    };
    RunConfig::resolve(None, &|_| None, &flags).expect("valid config")
}

fn closed_form_oracle() -> Outcome {
    let cfg = config(256, 1e-12);
    let start = Instant::now();
    let (exit, lines) = cmd_xicheck(&cfg, &mut Vec::new(), &mut Vec::new()).map_err(|e| e.to_string())?;
    let per_eps = start.elapsed().as_secs_f64() / lines.len() as f64;
    let worst = lines.iter().map(|l| l.diff).fold(0.0, f64::max);
    let detail = format!(
        "eps in {{0, 0.1, 0.3}}: max |J - closed form| = {worst:.2e} (limit 1e-10), exit {}, {per_eps:.2} s per eps",
        exit.code()
    );
    check(exit == Exit::Clean && worst <= 1e-10 && lines.len() == 3 && per_eps < 120.0, detail)
}

fn flat_sweep() -> Outcome {
    let cfg = config(256, 1e-8);
    let start = Instant::now();
    let (exit, r) = cmd_sweep(&cfg, &RatioIntegrand::exact(), &mut Vec::new(), &mut Vec::new())
        .map_err(|e| e.to_string())?;
    let ratio = r.worst_consistency_ratio();
    let failed = (0..r.len()).filter(|&i| r.failed(i)).count();
    let detail = format!(
        "{} points, {failed} failed, max |I - ref| / bound = {ratio:.3} (limit 5), {} jumps, {:.1} s",
        r.len(),
        r.jumps.len(),
        start.elapsed().as_secs_f64()
    );
    check(exit == Exit::Clean && r.len() == 24 && failed == 0 && ratio <= 5.0 && r.jumps.is_empty(), detail)
}

fn falsification_sensitivity() -> Outcome {
    let cfg = config(256, 1e-8);
    let prec = cfg.precision_bits;
    let c = Complex::from_f64(prec, 0.01, 0.0);
    let s0 = Complex::from_f64(prec, 0.75, 10.0);
    let f = build_integrand(&[(c.clone(), s0.clone())]).map_err(|e| e.to_string())?;
    let (exit, r) = cmd_sweep(&cfg, &f, &mut Vec::new(), &mut Vec::new()).map_err(|e| e.to_string())?;
    if r.jumps.len() != 1 {
        return Err(format!("{} jumps, expected 1", r.jumps.len()));
    }
    let j = &r.jumps[0];
    let est = residue_from_jump(j, &r).residue.re.to_f64();
    // the injected pair adds Re(c) sign(sigma - Re s0) to I
    let jump = injected_contribution(&c, &s0, 0.5 + j.eps_lo) - injected_contribution(&c, &s0, 0.5 + j.eps_hi);
    let want = -jump / 2.0;
    let rel = (est - want).abs() / want.abs();
    let detail = format!(
        "one jump in ({}, {}), residue estimate {est:.10} vs analytic {want} (rel err {rel:.1e}, limit 1e-2), exit {}",
        j.eps_lo,
        j.eps_hi,
        exit.code()
    );
    check(exit == Exit::Jump && j.eps_lo < 0.25 && j.eps_hi > 0.25 && rel < 0.01, detail)
}

fn special_function_suite() -> Outcome {
    let tol = 1e-12;
    let ctx = PrecisionContext::new(256, tol).map_err(|e| e.to_string())?;
    let c = |re: f64, im: f64| Complex::from_f64(256, re, im);
    let e = |x: Error| x.to_string();
    let pi = ctx.pi();
    let z2 = zeta(&c(2.0, 0.0), &ctx).map_err(e)?.value;
    let d2 = abs_diff(&z2.re, &(Float::with_val(256, pi.square_ref()) / 6u32)) + z2.im.to_f64().abs();
    let z0 = zeta(&c(0.0, 0.0), &ctx).map_err(e)?.value;
    let d0 = (z0.re.to_f64() + 0.5).abs() + z0.im.to_f64().abs();
    let zh = zeta(&c(0.5, 0.0), &ctx).map_err(e)?.value;
    let dh = (zh - &zeta_eta(&c(0.5, 0.0), 256)).hypot_f64();
    let x0 = xi(&c(0.0, 0.0), &ctx).map_err(e)?.value;
    let x1 = xi(&c(1.0, 0.0), &ctx).map_err(e)?.value;
    let dx = (x0.add_f64(-0.5)).hypot_f64().max((x1.add_f64(-0.5)).hypot_f64());

    let mut rng = ChaCha8Rng::seed_from_u64(20240601);
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let s = c(rng.gen_range(-3.0..3.0), rng.gen_range(-30.0..30.0));
        let a = xi(&s, &ctx).map_err(e)?;
        let b = xi(&(Complex::one(256) - &s), &ctx).map_err(e)?;
        let r = xi_symmetry_residual(&s, &ctx).map_err(e)?;
        worst = worst.max(r / (a.err_bound + b.err_bound));
    }
    let detail = format!(
        "zeta(2) {d2:.1e}, zeta(0) {d0:.1e}, zeta(1/2) vs alternating series {dh:.1e}, xi(0), xi(1) {dx:.1e} (tol {tol:e}); \
         functional equation residual / bounds <= {worst:.3} on 100 points (limit 10)"
    );
    check(d2 <= tol && d0 <= tol && dh <= 10.0 * tol && dx <= tol && worst <= 10.0, detail)
}

fn zero_finder() -> Outcome {
    let ctx = PrecisionContext::new(256, 1e-12).map_err(|e| e.to_string())?;
    let z = scan_zeros(30.0, DEFAULT_SCAN_STEP, &ctx).map_err(|e| e.to_string())?;
    if z.len() != 3 {
        return Err(format!("{} zeros on [0, 30], expected 3", z.len()));
    }
    let mut worst: f64 = 0.0;
    let mut flagged = 0;
    for (g, want) in z.ordinates.iter().zip(ZERO_ORDINATES) {
        worst = worst.max(abs_diff(g, &float(256, want)));
        let rho = Complex::new(ctx.float(0.5), g.clone());
        if matches!(f_ratio(&rho, &ctx), Err(Error::NearZeroDivisor { .. })) {
            flagged += 1;
        }
    }
    let detail = format!("3 zeros, max deviation {worst:.1e} (limit 1e-8), divisor flagged at {flagged}/3");
    check(worst <= 1e-8 && flagged == 3, detail)
}

fn quadrature_self_consistency() -> Outcome {
    let tol = 1e-10;
    let ctx = PrecisionContext::new(256, tol).map_err(|e| e.to_string())?;
    let opts = IntegralOptions::default();
    let cases: Vec<(&str, Box<dyn Fn(&IntegralOptions) -> rhxi::Result<IntegralResult>>)> = vec![
        ("I(0.02)", Box::new(|o| i_of_eps(0.02, &ctx, o))),
        ("I(0.25)", Box::new(|o| i_of_eps(0.25, &ctx, o))),
        ("reference", Box::new(|o| reference_value(&ctx, o))),
        ("J(0)", Box::new(|o| j_of_eps(0.0, &ctx, o))),
        ("J(0.3)", Box::new(|o| j_of_eps(0.3, &ctx, o))),
    ];
    let mut ok = true;
    let mut parts = Vec::new();
    for (name, f) in &cases {
        let base = f(&opts).map_err(|e| e.to_string())?;
        let doubled = f(&opts.clone().with_t(2.0 * base.t_used)).map_err(|e| e.to_string())?;
        let tighter = f(&opts.clone().with_tol(tol / 10.0)).map_err(|e| e.to_string())?;
        let d_t = abs_diff(&base.value, &doubled.value);
        let d_tol = abs_diff(&base.value, &tighter.value);
        let t_ok = d_t <= base.tail_err + base.quad_err + doubled.quad_err;
        let tol_ok = d_tol <= tol;
        ok &= t_ok && tol_ok;
        parts.push(format!("{name}: T->2T {d_t:.1e}/{:.1e}, tol/10 {d_tol:.1e}", base.tail_err));
    }
    check(ok, parts.join("; "))
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let p = |name: &str| dir.path().join(name).to_string_lossy().into_owned();
    let (csv_a, csv_b, svg_a, svg_b) = (p("a.csv"), p("b.csv"), p("a.svg"), p("b.svg"));
    let runs: Vec<(&str, Vec<Vec<String>>, Option<(String, String)>)> = vec![
        ("integrate", vec![argv(&["integrate", "--eps", "0.25", "--tol", "1e-10"]); 2], None),
        (
            "sweep",
            vec![
                argv(&["sweep", "--tol", "1e-8", "--eps-min", "0.1", "--eps-max", "0.4", "--eps-steps", "4", "--out", &csv_a]),
                argv(&["sweep", "--tol", "1e-8", "--eps-min", "0.1", "--eps-max", "0.4", "--eps-steps", "4", "--out", &csv_b]),
            ],
            Some((csv_a.clone(), csv_b.clone())),
        ),
        ("xicheck", vec![argv(&["xicheck", "--tol", "1e-10"]); 2], None),
        ("zeros", vec![argv(&["zeros", "--tmax", "40"]); 2], None),
        (
            "plot",
            vec![
                argv(&["plot", "--in", &csv_a, "--out", &svg_a]),
                argv(&["plot", "--in", &csv_a, "--out", &svg_b]),
            ],
            Some((svg_a.clone(), svg_b.clone())),
        ),
    ];
    let mut names = Vec::new();
    for (name, calls, files) in runs {
        let outs: Vec<(i32, Vec<u8>)> = calls
            .iter()
            .map(|args| {
                let mut out = Vec::new();
                let code = run(args, &|_| None, &mut out, &mut Vec::new());
                (code, out)
            })
            .collect();
        if outs[0].0 != 0 || outs[0] != outs[1] {
            return Err(format!("{name}: runs differ or failed (exit {})", outs[0].0));
        }
        if let Some((a, b)) = files {
            let (a, b) = (fs::read(&a).map_err(|e| e.to_string())?, fs::read(&b).map_err(|e| e.to_string())?);
            if a != b || a.is_empty() {
                return Err(format!("{name}: output files differ"));
            }
        }
        names.push(name);
    }
    Ok(format!("byte-identical output for {}", names.join(", ")))
}

fn argv(args: &[&str]) -> Vec<String> {
    std::iter::once("rhxi").chain(args.iter().copied()).map(String::from).collect()
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 7] = [
        ("closed-form oracle", closed_form_oracle),
        ("flat sweep", flat_sweep),
        ("falsification sensitivity", falsification_sensitivity),
        ("special-function suite", special_function_suite),
        ("zero finder", zero_finder),
        ("quadrature self-consistency", quadrature_self_consistency),
        ("determinism", determinism),
    ];
    let mut failures = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = f();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("[PASS] {} {name}: {detail} [{secs:.1} s]", k + 1),
            Err(detail) => {
                failures += 1;
                println!("[FAIL] {} {name}: {detail} [{secs:.1} s]", k + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failures} failed", criteria.len() - failures);
    if failures > 0 {
        std::process::exit(1);
    }
}
