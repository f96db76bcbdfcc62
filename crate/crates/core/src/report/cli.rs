use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use super::commands::{
    build_integrand, cmd_integrate, cmd_plot, cmd_sweep, cmd_xicheck, cmd_zeros, parse_injection, Exit,
};
use super::config::{ConfigOverrides, OutputFormat, RunConfig};
use crate::error::{Error, Result};

#[derive(Debug, Parser)]
#[command(name = "rhxi", about = "Contour integrals of xi(2s)/xi(s) across the critical strip")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// I(eps) on a single line
    Integrate(IntegrateArgs),
    /// I(eps) over a grid with jump detection
    Sweep(SweepArgs),
    /// integral of xi against its closed form
    Xicheck(CommonArgs),
    /// zeros on the critical line as CSV
    Zeros(ZerosArgs),
    /// SVG plot of a sweep CSV
    Plot(PlotArgs),
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long)]
    pub precision_bits: Option<u32>,
    /// key=value file; flags override it
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct IntegrateArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub eps: f64,
    /// ceiling on the truncation height
    #[arg(long)]
    pub tmax: Option<f64>,
    /// fixed truncation height
    #[arg(long)]
    pub t: Option<f64>,
    /// extra pole, as c@s0 (repeatable)
    #[arg(long)]
    pub inject: Vec<String>,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long)]
    pub eps_min: Option<f64>,
    #[arg(long)]
    pub eps_max: Option<f64>,
    #[arg(long)]
    pub eps_steps: Option<usize>,
    #[arg(long)]
    pub tmax: Option<f64>,
    #[arg(long)]
    pub threshold: Option<f64>,
    #[arg(long)]
    pub inject: Vec<String>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub format: Option<String>,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Args)]
pub struct ZerosArgs {
    #[arg(long, default_value_t = 30.0)]
    pub tmax: f64,
    #[arg(long)]
    pub step: Option<f64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Args)]
pub struct PlotArgs {
    /// sweep CSV
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
}

/// Parses `args` (program name first) and runs the command. Returns the
/// process exit code; reports go to `out`, diagnostics to `err`.
pub fn run<I, T>(
    args: I,
    env: &dyn Fn(&str) -> Option<String>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                Exit::Usage.code()
            } else {
                let _ = write!(out, "{text}");
                Exit::Clean.code()
            };
        }
    };
    match dispatch(cli.command, env, out, err) {
        Ok(exit) => exit.code(),
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            Exit::for_error(&e).code()
        }
    }
}

fn resolve(common: &CommonArgs, env: &dyn Fn(&str) -> Option<String>, mut flags: ConfigOverrides) -> Result<RunConfig> {
    flags.target_tol = common.tol;
    flags.precision_bits = common.precision_bits;
    RunConfig::resolve(common.config.as_deref(), env, &flags)
}

fn dispatch(
    command: Command,
    env: &dyn Fn(&str) -> Option<String>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<Exit> {
    match command {
        Command::Integrate(a) => {
            let flags = ConfigOverrides {
                t_cap: a.tmax,
                ..Default::default()
            };
            let cfg = resolve(&a.common, env, flags)?;
            let integrand = injections(&a.inject, &cfg)?;
            cmd_integrate(&cfg, a.eps, &integrand, a.t, out, err)
        }
        Command::Sweep(a) => {
            let flags = ConfigOverrides {
                eps_min: a.eps_min,
                eps_max: a.eps_max,
                eps_steps: a.eps_steps,
                t_cap: a.tmax,
                threshold: a.threshold,
                output_format: a.format.as_deref().map(str::parse::<OutputFormat>).transpose()?,
                output_path: a.out,
                ..Default::default()
            };
            let cfg = resolve(&a.common, env, flags)?;
            let integrand = injections(&a.inject, &cfg)?;
            cmd_sweep(&cfg, &integrand, out, err).map(|(exit, _)| exit)
        }
        Command::Xicheck(common) => {
            let cfg = resolve(&common, env, ConfigOverrides::default())?;
            cmd_xicheck(&cfg, out, err).map(|(exit, _)| exit)
        }
        Command::Zeros(a) => {
            let flags = ConfigOverrides {
                output_path: a.out,
                ..Default::default()
            };
            let cfg = resolve(&a.common, env, flags)?;
            cmd_zeros(&cfg, a.tmax, a.step, out, err)
        }
        Command::Plot(a) => cmd_plot(&a.input, &a.out),
    }
}

fn injections(specs: &[String], cfg: &RunConfig) -> Result<crate::quadrature::RatioIntegrand> {
    let parsed = specs
        .iter()
        .map(|s| parse_injection(s, cfg.precision_bits))
        .collect::<Result<Vec<_>>>()?;
    build_integrand(&parsed)
}

impl From<clap::Error> for Error {
    fn from(e: clap::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
