use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::precision::{PrecisionContext, DEFAULT_PRECISION_BITS};
use crate::quadrature::DEFAULT_T_CAP;
use crate::sweep::{DEFAULT_EPS_MAX, DEFAULT_EPS_MIN, DEFAULT_EPS_STEPS, DEFAULT_JUMP_THRESHOLD};

pub const PRECISION_ENV: &str = "RHXI_PRECISION_BITS";
pub const DEFAULT_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Json,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "csv" => Ok(Self::Csv),
            "json" => Ok(Self::Json),
            other => Err(Error::Parse(format!("unknown format {other:?}; expected csv or json"))),
        }
    }
}

impl fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Csv => "csv",
            Self::Json => "json",
        })
    }
}

/// Settings shared by every command, validated before any computation.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunConfig {
    pub precision_bits: u32,
    pub target_tol: f64,
    pub eps_min: f64,
    pub eps_max: f64,
    pub eps_steps: usize,
    pub t_cap: f64,
    pub threshold: f64,
    pub output_format: OutputFormat,
    pub output_path: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            precision_bits: DEFAULT_PRECISION_BITS,
            target_tol: DEFAULT_TOL,
            eps_min: DEFAULT_EPS_MIN,
            eps_max: DEFAULT_EPS_MAX,
            eps_steps: DEFAULT_EPS_STEPS,
            t_cap: DEFAULT_T_CAP,
            threshold: DEFAULT_JUMP_THRESHOLD,
            output_format: OutputFormat::Csv,
            output_path: None,
        }
    }
}

/// Values given on the command line; `None` leaves the lower layers in place.
#[derive(Clone, Debug, Default)]
pub struct ConfigOverrides {
    pub precision_bits: Option<u32>,
    pub target_tol: Option<f64>,
    pub eps_min: Option<f64>,
    pub eps_max: Option<f64>,
    pub eps_steps: Option<usize>,
    pub t_cap: Option<f64>,
    pub threshold: Option<f64>,
    pub output_format: Option<OutputFormat>,
    pub output_path: Option<PathBuf>,
}

impl RunConfig {
    /// Layers, lowest first: defaults, the environment, the config file, flags.
    pub fn resolve(
        file: Option<&Path>,
        env: &dyn Fn(&str) -> Option<String>,
        flags: &ConfigOverrides,
    ) -> Result<Self> {
        let mut cfg = Self::default();
        if let Some(bits) = env(PRECISION_ENV) {
            cfg.precision_bits = parse_value(PRECISION_ENV, &bits)?;
        }
        if let Some(path) = file {
            let text = fs::read_to_string(path)
                .map_err(|e| Error::Io(format!("cannot read config {}: {e}", path.display())))?;
            cfg.apply_file(&text)?;
        }
        cfg.apply(flags);
        cfg.validate()?;
        Ok(cfg)
    }

    /// key=value lines; blank lines and lines starting with '#' are ignored.
    pub fn apply_file(&mut self, text: &str) -> Result<()> {
        for (n, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("config line {}: expected key=value", n + 1)))?;
            let (key, value) = (key.trim(), value.trim());
            match key.replace('-', "_").as_str() {
                "precision_bits" => self.precision_bits = parse_value(key, value)?,
                "target_tol" | "tol" => self.target_tol = parse_value(key, value)?,
                "eps_min" => self.eps_min = parse_value(key, value)?,
                "eps_max" => self.eps_max = parse_value(key, value)?,
                "eps_steps" => self.eps_steps = parse_value(key, value)?,
                "t_cap" | "tmax" => self.t_cap = parse_value(key, value)?,
                "threshold" => self.threshold = parse_value(key, value)?,
                "output_format" | "format" => self.output_format = value.parse()?,
                "output_path" | "out" => self.output_path = Some(PathBuf::from(value)),
                _ => return Err(Error::Parse(format!("config line {}: unknown key {key:?}", n + 1))),
            }
        }
        Ok(())
    }

    pub fn apply(&mut self, o: &ConfigOverrides) {
        if let Some(v) = o.precision_bits {
            self.precision_bits = v;
        }
        if let Some(v) = o.target_tol {
            self.target_tol = v;
        }
        if let Some(v) = o.eps_min {
            self.eps_min = v;
        }
        if let Some(v) = o.eps_max {
            self.eps_max = v;
        }
        if let Some(v) = o.eps_steps {
            self.eps_steps = v;
        }
        if let Some(v) = o.t_cap {
            self.t_cap = v;
        }
        if let Some(v) = o.threshold {
            self.threshold = v;
        }
        if let Some(v) = o.output_format {
            self.output_format = v;
        }
        if let Some(v) = &o.output_path {
            self.output_path = Some(v.clone());
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.context()?;
        if !(self.eps_min > 0.0 && self.eps_min < 1.0 && self.eps_max > 0.0 && self.eps_max < 1.0) {
            return Err(Error::Precondition(format!(
                "eps range [{}, {}] must lie in (0, 1)",
                self.eps_min, self.eps_max
            )));
        }
        if self.eps_steps == 0 {
            return Err(Error::Precondition("eps_steps must be at least 1".into()));
        }
        if self.eps_steps > 1 && self.eps_min >= self.eps_max {
            return Err(Error::Precondition(format!(
                "eps_min = {} must be below eps_max = {}",
                self.eps_min, self.eps_max
            )));
        }
        if !(self.t_cap >= 10.0 && self.t_cap <= 200.0) {
            return Err(Error::Precondition(format!("t_cap = {} must lie in [10, 200]", self.t_cap)));
        }
        if !(self.threshold > 0.0) {
            return Err(Error::Precondition(format!("threshold = {} must be positive", self.threshold)));
        }
        Ok(())
    }

    pub fn context(&self) -> Result<PrecisionContext> {
        PrecisionContext::new(self.precision_bits, self.target_tol)
    }

    /// Decimal digits that round-trip a value at this precision.
    pub fn digits(&self) -> usize {
        decimal_digits(self.precision_bits)
    }
}

/// ceil(bits * 0.302) + 2
pub fn decimal_digits(bits: u32) -> usize {
    (bits as f64 * 0.302).ceil() as usize + 2
}

fn parse_value<T: FromStr>(key: &str, value: &str) -> Result<T> {
    value
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad value {value:?} for {key}")))
}
