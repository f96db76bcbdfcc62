use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;
use std::time::Instant;

use rug::Float;

use super::config::{OutputFormat, RunConfig};
use super::plot::render_svg;
use super::table::{self, format_float};
use crate::complex::Complex;
use crate::error::{Error, Result};
use crate::quadrature::{closed_form_j, i_of_eps_with, j_of_eps, IntegralOptions, RatioIntegrand};
use crate::sweep::{eps_grid, sweep_with, SweepOptions, SweepResult};
use crate::zeros::{scan_zeros, DEFAULT_SCAN_STEP};

/// Process exit statuses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exit {
    Clean = 0,
    Usage = 2,
    Numeric = 3,
    SelfTest = 4,
    Jump = 10,
}

impl Exit {
    pub fn code(self) -> i32 {
        self as i32
    }

    /// Usage and precondition problems map to 2, everything else to 3.
    pub fn for_error(e: &Error) -> Self {
        match e {
            Error::InvalidPrecision(_)
            | Error::InvalidContour(_)
            | Error::Precondition(_)
            | Error::Domain(_)
            | Error::Parse(_)
            | Error::Io(_)
            | Error::NoSignChange { .. } => Exit::Usage,
            _ => Exit::Numeric,
        }
    }
}

/// eps values checked by [`cmd_xicheck`].
pub const XICHECK_EPS: [f64; 3] = [0.0, 0.1, 0.3];

fn options(cfg: &RunConfig, t_override: Option<f64>) -> IntegralOptions {
    IntegralOptions {
        tol: Some(cfg.target_tol),
        t_cap: cfg.t_cap,
        t_override,
        ..IntegralOptions::default()
    }
}

/// Parses `c@s0`, e.g. `0.01@0.75+10i`.
pub fn parse_injection(spec: &str, prec: u32) -> Result<(Complex, Complex)> {
    let (c, s0) = spec
        .split_once('@')
        .ok_or_else(|| Error::Parse(format!("injection {spec:?} must look like c@s0")))?;
    Ok((parse_complex(c, prec)?, parse_complex(s0, prec)?))
}

/// Parses `a`, `bi`, `a+bi`, `a-bi`, `a+i` with decimal or exponent notation.
pub fn parse_complex(text: &str, prec: u32) -> Result<Complex> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || Error::Parse(format!("cannot parse complex number {text:?}"));
    if s.is_empty() {
        return Err(bad());
    }
    let num = |t: &str| -> Result<Float> {
        let v = match t {
            "" | "+" => "1",
            "-" => "-1",
            other => other,
        };
        Float::parse(v).map(|p| Float::with_val(prec, p)).map_err(|_| bad())
    };
    let Some(body) = s.strip_suffix('i') else {
        return Ok(Complex::new(num(&s)?, Float::new(prec)));
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    match split {
        Some(k) => Ok(Complex::new(num(&body[..k])?, num(&body[k..])?)),
        None => Ok(Complex::new(Float::new(prec), num(body)?)),
    }
}

/// f, plus any injected poles.
pub fn build_integrand(injections: &[(Complex, Complex)]) -> Result<RatioIntegrand> {
    injections
        .iter()
        .try_fold(RatioIntegrand::exact(), |f, (c, s0)| f.with_pole(c.clone(), s0.clone()))
}

/// Prints I(eps) with its error split. Wall time goes to `diag`.
pub fn cmd_integrate(
    cfg: &RunConfig,
    eps: f64,
    integrand: &RatioIntegrand,
    t_override: Option<f64>,
    out: &mut dyn Write,
    diag: &mut dyn Write,
) -> Result<Exit> {
    let ctx = cfg.context()?;
    let start = Instant::now();
    let r = i_of_eps_with(integrand, eps, &ctx, &options(cfg, t_override))?;
    writeln!(out, "eps = {eps}")?;
    writeln!(out, "I = {}", format_float(&r.value, cfg.digits()))?;
    writeln!(out, "quad_err = {:e}", r.quad_err)?;
    writeln!(out, "tail_err = {:e}", r.tail_err)?;
    writeln!(out, "total_err = {:e}", r.total_err())?;
    writeln!(out, "T_used = {}", r.t_used)?;
    writeln!(out, "panels = {}", r.panels)?;
    writeln!(diag, "wall_time = {:.3} s", start.elapsed().as_secs_f64())?;
    Ok(Exit::Clean)
}

/// Runs the sweep and writes the table to `cfg.output_path`, or to `out`
/// when no path is set. Exit 10 when any jump is flagged.
pub fn cmd_sweep(
    cfg: &RunConfig,
    integrand: &RatioIntegrand,
    out: &mut dyn Write,
    diag: &mut dyn Write,
) -> Result<(Exit, SweepResult)> {
    let ctx = cfg.context()?;
    let grid = eps_grid(cfg.eps_min, cfg.eps_max, cfg.eps_steps)?;
    let opts = SweepOptions {
        integral: options(cfg, None),
        threshold: cfg.threshold,
    };
    let start = Instant::now();
    let result = sweep_with(integrand, &grid, &ctx, &opts)?;
    match &cfg.output_path {
        Some(path) => {
            let file = BufWriter::new(File::create(path)?);
            write_sweep(&result, cfg, file)?;
            writeln!(out, "points = {}", result.len())?;
            writeln!(out, "failed = {}", (0..result.len()).filter(|&i| result.failed(i)).count())?;
            writeln!(out, "reference = {}", format_float(&result.reference, cfg.digits()))?;
            writeln!(out, "jumps = {}", result.jumps.len())?;
            for j in &result.jumps {
                writeln!(
                    out,
                    "jump eps_lo = {} eps_hi = {} delta = {} significance = {:.3e}",
                    j.eps_lo,
                    j.eps_hi,
                    format_float(&j.delta, cfg.digits()),
                    j.significance
                )?;
            }
        }
        None => write_sweep(&result, cfg, &mut *out)?,
    }
    writeln!(diag, "wall_time = {:.3} s", start.elapsed().as_secs_f64())?;
    let exit = if result.jumps.is_empty() { Exit::Clean } else { Exit::Jump };
    Ok((exit, result))
}

fn write_sweep<W: Write>(result: &SweepResult, cfg: &RunConfig, w: W) -> Result<()> {
    match cfg.output_format {
        OutputFormat::Csv => table::write_csv(result, cfg.digits(), w),
        OutputFormat::Json => table::write_json(result, cfg, w),
    }
}

/// One line of the closed-form check.
#[derive(Clone, Debug)]
pub struct XiCheckLine {
    pub eps: f64,
    pub value: Float,
    pub diff: f64,
    pub bound: f64,
}

impl XiCheckLine {
    pub fn passed(&self) -> bool {
        self.diff <= self.bound
    }
}

/// Compares J(eps) for eps in {0, 0.1, 0.3} with the closed form; exit 4
/// when any difference exceeds its error bound.
pub fn cmd_xicheck(cfg: &RunConfig, out: &mut dyn Write, diag: &mut dyn Write) -> Result<(Exit, Vec<XiCheckLine>)> {
    let ctx = cfg.context()?;
    let opts = options(cfg, None);
    let start = Instant::now();
    let exact = closed_form_j(&ctx);
    writeln!(out, "closed_form = {}", format_float(&exact, cfg.digits()))?;
    let mut lines = Vec::new();
    for eps in XICHECK_EPS {
        let r = j_of_eps(eps, &ctx, &opts)?;
        let diff = Float::with_val(ctx.precision_bits(), &r.value - &exact).abs().to_f64();
        let line = XiCheckLine {
            eps,
            value: r.value.clone(),
            diff,
            bound: r.total_err(),
        };
        writeln!(
            out,
            "eps = {eps} J = {} diff = {diff:.3e} bound = {:.3e} {}",
            format_float(&r.value, cfg.digits()),
            line.bound,
            if line.passed() { "pass" } else { "FAIL" }
        )?;
        lines.push(line);
    }
    writeln!(diag, "wall_time = {:.3} s", start.elapsed().as_secs_f64())?;
    let exit = if lines.iter().all(XiCheckLine::passed) {
        Exit::Clean
    } else {
        Exit::SelfTest
    };
    Ok((exit, lines))
}

/// Zero ordinates on [0, t_max] as CSV (n, gamma, radius).
pub fn cmd_zeros(cfg: &RunConfig, t_max: f64, step: Option<f64>, out: &mut dyn Write, diag: &mut dyn Write) -> Result<Exit> {
    let ctx = cfg.context()?;
    let start = Instant::now();
    let zeros = scan_zeros(t_max, step.unwrap_or(DEFAULT_SCAN_STEP), &ctx)?;
    let digits = (ctx.precision_bits() as usize / 4) * 302 / 1000 + 4;
    match &cfg.output_path {
        Some(path) => zeros.write_csv(BufWriter::new(File::create(path)?), digits)?,
        None => zeros.write_csv(&mut *out, digits)?,
    }
    for w in &zeros.warnings {
        writeln!(diag, "warning: {w}")?;
    }
    writeln!(diag, "wall_time = {:.3} s", start.elapsed().as_secs_f64())?;
    Ok(Exit::Clean)
}

/// SVG plot of a sweep CSV.
pub fn cmd_plot(in_path: &Path, out_path: &Path) -> Result<Exit> {
    let file = File::open(in_path).map_err(|e| Error::Io(format!("cannot open {}: {e}", in_path.display())))?;
    let rows = table::read_csv(file)?;
    let svg = render_svg(&rows)?;
    std::fs::write(out_path, svg)?;
    Ok(Exit::Clean)
}
