//! I(eps) over a grid of eps, jump detection and residue estimates.
//!
//! Moving the line Re s = 1/2 + eps across a pole of f at s0 with Im s0 > 0
//! changes I by twice the real part of the residue there (the mirror pole at
//! conj(s0) contributes equally). So a jump delta = I(eps_lo) - I(eps_hi)
//! between adjacent grid points corresponds to Re(residue) = -delta/2.

use std::f64::consts::PI;

use rayon::prelude::*;
use rug::Float;

use crate::complex::Complex;
use crate::error::{Error, Result};
use crate::precision::PrecisionContext;
use crate::quadrature::{
    i_of_eps_with, integrate_adaptive, reference_value_with, GaussKronrod, IntegralOptions,
    IntegralResult, RatioIntegrand, Sample, TailModel, DEFAULT_T_CAP,
};
use crate::special::xi;
use crate::zeros::{scan_zeros, DEFAULT_SCAN_STEP, MAX_SCAN_HEIGHT};

pub const DEFAULT_JUMP_THRESHOLD: f64 = 5.0;
pub const DEFAULT_EPS_MIN: f64 = 0.02;
pub const DEFAULT_EPS_MAX: f64 = 0.48;
pub const DEFAULT_EPS_STEPS: usize = 24;
/// Largest circle radius used by [`residue_at`].
pub const MAX_CIRCLE_RADIUS: f64 = 0.05;

/// `steps` points evenly spaced from `lo` to `hi` inclusive.
pub fn eps_grid(lo: f64, hi: f64, steps: usize) -> Result<Vec<f64>> {
    if steps == 0 {
        return Err(Error::Precondition("eps grid needs at least one point".into()));
    }
    if !(lo > 0.0 && hi < 1.0 && lo <= hi) || (steps > 1 && lo == hi) {
        return Err(Error::Precondition(format!(
            "eps range [{lo}, {hi}] must satisfy 0 < min < max < 1"
        )));
    }
    if steps == 1 {
        return Ok(vec![lo]);
    }
    let h = (hi - lo) / (steps - 1) as f64;
    // round to 12 digits so 0.02 * 12 prints as 0.24
    Ok((0..steps)
        .map(|k| ((lo + k as f64 * h) * 1e12).round() / 1e12)
        .collect())
}

/// 0.02, 0.04, ..., 0.48.
pub fn default_grid() -> Vec<f64> {
    eps_grid(DEFAULT_EPS_MIN, DEFAULT_EPS_MAX, DEFAULT_EPS_STEPS).expect("default grid is valid")
}

/// Adjacent grid points whose values differ by more than the threshold
/// times their combined error bounds.
#[derive(Clone, Debug, PartialEq)]
pub struct JumpFlag {
    pub eps_lo: f64,
    pub eps_hi: f64,
    /// I(eps_lo) - I(eps_hi)
    pub delta: Float,
    /// |delta| / combined error bound
    pub significance: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ResidueMethod {
    ContourCircle,
    JumpDelta,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ResidueEstimate {
    /// pole position; `None` when only the real part of the residue is known
    pub location: Option<Complex>,
    pub residue: Complex,
    pub method: ResidueMethod,
    pub err_bound: f64,
}

/// I(eps) on a grid together with the reference line Re s = 3/2.
#[derive(Clone, Debug)]
pub struct SweepResult {
    pub eps_grid: Vec<f64>,
    /// NaN where the point failed
    pub values: Vec<Float>,
    /// infinite where the point failed
    pub err_bounds: Vec<f64>,
    pub t_used: Vec<f64>,
    /// failure message per point
    pub failures: Vec<Option<String>>,
    pub reference: Float,
    pub reference_err: f64,
    pub jumps: Vec<JumpFlag>,
}

impl SweepResult {
    pub fn len(&self) -> usize {
        self.eps_grid.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eps_grid.is_empty()
    }

    pub fn failed(&self, i: usize) -> bool {
        self.failures[i].is_some()
    }

    /// max over successful points of |I(eps_i) - reference| / (err_i + reference_err)
    pub fn worst_consistency_ratio(&self) -> f64 {
        (0..self.len())
            .filter(|&i| !self.failed(i))
            .map(|i| {
                let d = Float::with_val(self.reference.prec(), &self.values[i] - &self.reference);
                d.abs().to_f64() / (self.err_bounds[i] + self.reference_err)
            })
            .fold(0.0, f64::max)
    }
}

#[derive(Clone, Debug)]
pub struct SweepOptions {
    pub integral: IntegralOptions,
    pub threshold: f64,
}

impl Default for SweepOptions {
    fn default() -> Self {
        Self {
            integral: IntegralOptions::default(),
            threshold: DEFAULT_JUMP_THRESHOLD,
        }
    }
}

pub fn sweep(eps_grid: &[f64], ctx: &PrecisionContext, opts: &SweepOptions) -> Result<SweepResult> {
    sweep_with(&RatioIntegrand::exact(), eps_grid, ctx, opts)
}

/// Evaluates I at every grid point in parallel. Points where the line runs
/// into a pole are marked failed and the sweep continues; any other error
/// aborts it.
pub fn sweep_with(
    integrand: &RatioIntegrand,
    eps_grid: &[f64],
    ctx: &PrecisionContext,
    opts: &SweepOptions,
) -> Result<SweepResult> {
    if eps_grid.is_empty() {
        return Err(Error::Precondition("eps grid is empty".into()));
    }
    if eps_grid.iter().any(|&e| !(e > 0.0 && e < 1.0)) {
        return Err(Error::Precondition("eps grid values must lie in (0, 1)".into()));
    }
    if eps_grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Precondition("eps grid must be strictly increasing".into()));
    }
    let mut iopts = opts.integral.clone();
    if iopts.zeros.is_none() {
        let height = scan_height(eps_grid, ctx, &iopts)?;
        iopts.zeros = Some(scan_zeros(height, DEFAULT_SCAN_STEP, ctx)?);
    }
    let reference = reference_value_with(integrand, ctx, &iopts)?;
    let outcomes: Vec<Result<IntegralResult>> = eps_grid
        .par_iter()
        .map(|&eps| i_of_eps_with(integrand, eps, ctx, &iopts))
        .collect();

    let prec = ctx.precision_bits();
    let mut result = SweepResult {
        eps_grid: eps_grid.to_vec(),
        values: Vec::with_capacity(eps_grid.len()),
        err_bounds: Vec::with_capacity(eps_grid.len()),
        t_used: Vec::with_capacity(eps_grid.len()),
        failures: Vec::with_capacity(eps_grid.len()),
        reference: reference.value.clone(),
        reference_err: reference.total_err(),
        jumps: Vec::new(),
    };
    for outcome in outcomes {
        match outcome {
            Ok(r) => {
                result.err_bounds.push(r.total_err());
                result.t_used.push(r.t_used);
                result.values.push(r.value);
                result.failures.push(None);
            }
            Err(e @ Error::NearPoleOnContour { .. }) => {
                result.values.push(Float::with_val(prec, f64::NAN));
                result.err_bounds.push(f64::INFINITY);
                result.t_used.push(f64::NAN);
                result.failures.push(Some(e.to_string()));
            }
            Err(e) => return Err(e),
        }
    }
    result.jumps = detect_jumps(&result, opts.threshold);
    Ok(result)
}

fn scan_height(eps_grid: &[f64], ctx: &PrecisionContext, opts: &IntegralOptions) -> Result<f64> {
    let tol = opts.tol.unwrap_or(ctx.target_tol());
    let mut height: f64 = 0.0;
    for &eps in eps_grid.iter().chain(std::iter::once(&1.0)) {
        let t = match opts.t_override {
            Some(t) => t,
            None => TailModel::ratio(0.5 + eps)?.truncation_height(PI * tol / 2.0, opts.t_cap.min(DEFAULT_T_CAP))?,
        };
        height = height.max(t);
    }
    Ok((height + 1.0).min(MAX_SCAN_HEIGHT))
}

/// Flags adjacent successful points with |I_i - I_{i+1}| > threshold (e_i + e_{i+1}).
pub fn detect_jumps(result: &SweepResult, threshold: f64) -> Vec<JumpFlag> {
    let mut flags = Vec::new();
    for i in 1..result.len() {
        if result.failed(i - 1) || result.failed(i) {
            continue;
        }
        let a = &result.values[i - 1];
        let b = &result.values[i];
        let delta = Float::with_val(a.prec(), a - b);
        let combined = result.err_bounds[i - 1] + result.err_bounds[i];
        let significance = delta.clone().abs().to_f64() / combined;
        if significance > threshold {
            flags.push(JumpFlag {
                eps_lo: result.eps_grid[i - 1],
                eps_hi: result.eps_grid[i],
                delta,
                significance,
            });
        }
    }
    flags
}

/// Real part of the residue sum crossed inside the flag's bracket:
/// Re(residue) = -delta/2. The pole's height is not resolved.
pub fn residue_from_jump(flag: &JumpFlag, result: &SweepResult) -> ResidueEstimate {
    let prec = flag.delta.prec();
    let re = Float::with_val(prec, -&flag.delta) / 2u32;
    let pair_err = result
        .eps_grid
        .iter()
        .position(|&e| e == flag.eps_lo)
        .map(|i| result.err_bounds[i] + result.err_bounds[i + 1])
        .unwrap_or(f64::NAN);
    ResidueEstimate {
        location: None,
        residue: Complex::new(re, Float::new(prec)),
        method: ResidueMethod::JumpDelta,
        err_bound: pair_err / 2.0,
    }
}

/// f with an extra pole c/(s - s0) (and its mirror at conj s0).
pub fn inject_pole(c: Complex, s0: Complex) -> Result<RatioIntegrand> {
    RatioIntegrand::exact().with_pole(c, s0)
}

/// Residue of f at a zero rho of xi, from (1/2 pi i) times the integral of f
/// over a circle around rho. The circle radius is min(0.05, half the gap to
/// the nearest other zero), and the circle must enclose exactly one zero.
pub fn residue_at(rho: &Complex, ctx: &PrecisionContext) -> Result<ResidueEstimate> {
    let r = circle_radius(rho, ctx)?;
    residue_on_circle(rho, r, ctx)
}

/// [`residue_at`] with an explicit radius.
pub fn residue_on_circle(rho: &Complex, radius: f64, ctx: &PrecisionContext) -> Result<ResidueEstimate> {
    if !(radius > 0.0 && radius.is_finite()) {
        return Err(Error::Precondition(format!("circle radius {radius} must be positive")));
    }
    let winding = winding_number(rho, radius, ctx)?;
    if winding != 1 {
        return Err(Error::CircleContainsMultipleZeros {
            center: rho.to_string(),
            winding,
        });
    }
    let prec = ctx.precision_bits();
    let rad = Float::with_val(prec, radius);
    // (1/2 pi i) closed integral of g ds = (1/2 pi) integral over [0, 2 pi] of g(s) r e^{i theta}
    let f = |theta: &Float| -> Result<Sample<Complex>> {
        let (s, e) = circle_point(rho, &rad, theta);
        let v = crate::special::f_ratio(&s, ctx)?;
        Ok(Sample {
            value: v.value * &e.scale(&rad),
            err: v.err_bound * radius,
        })
    };
    let out = circle_integral(&f, ctx)?;
    let two_pi = ctx.pi() * 2u32;
    Ok(ResidueEstimate {
        location: Some(rho.clone()),
        residue: Complex::new(out.value.re / &two_pi, out.value.im / &two_pi),
        method: ResidueMethod::ContourCircle,
        err_bound: out.err / (2.0 * PI),
    })
}

/// xi(2 rho)/xi'(rho), with xi'(rho) from the Cauchy integral over the same
/// circle. Independent of f, so it cross-checks [`residue_at`].
pub fn residue_by_derivative(rho: &Complex, radius: f64, ctx: &PrecisionContext) -> Result<Complex> {
    let prec = ctx.precision_bits();
    let rad = Float::with_val(prec, radius);
    // xi'(rho) = (1/2 pi) integral over [0, 2 pi] of xi(s) e^{-i theta} / r
    let f = |theta: &Float| -> Result<Sample<Complex>> {
        let (s, e) = circle_point(rho, &rad, theta);
        let v = xi(&s, ctx)?;
        Ok(Sample {
            value: v.value * &e.conj().scale(&Float::with_val(prec, 1u32 / &rad)),
            err: v.err_bound / radius,
        })
    };
    let out = circle_integral(&f, ctx)?;
    let two_pi = ctx.pi() * 2u32;
    let deriv = Complex::new(out.value.re / &two_pi, out.value.im / &two_pi);
    let num = xi(&rho.scale_f64(2.0), ctx)?.value;
    (num / &deriv).check_finite("residue_by_derivative")
}

/// Net turns of xi(s) around 0 as s traverses the circle once. Samples are
/// added until consecutive arguments differ by less than pi/4.
pub fn winding_number(center: &Complex, radius: f64, ctx: &PrecisionContext) -> Result<i64> {
    let prec = ctx.precision_bits();
    let rad = Float::with_val(prec, radius);
    let two_pi = ctx.pi() * 2u32;
    let mut n = 64usize;
    loop {
        let args: Vec<f64> = (0..n)
            .into_par_iter()
            .map(|k| {
                let theta = Float::with_val(prec, &two_pi * k as u32) / n as u32;
                let (s, _) = circle_point(center, &rad, &theta);
                let v = xi(&s, ctx)?.value;
                Ok(v.arg().to_f64())
            })
            .collect::<Result<Vec<_>>>()?;
        let mut total = 0.0;
        let mut coarse = false;
        for k in 0..n {
            let mut d = args[(k + 1) % n] - args[k];
            while d > PI {
                d -= 2.0 * PI;
            }
            while d < -PI {
                d += 2.0 * PI;
            }
            if d.abs() > PI / 4.0 {
                coarse = true;
            }
            total += d;
        }
        if !coarse {
            return Ok((total / (2.0 * PI)).round() as i64);
        }
        if n >= 1 << 14 {
            return Err(Error::Precision {
                tol: ctx.target_tol(),
                bits: prec,
                detail: "argument of xi varies too fast along the circle".into(),
            });
        }
        n *= 4;
    }
}

fn circle_radius(rho: &Complex, ctx: &PrecisionContext) -> Result<f64> {
    let (_, gamma) = rho.to_f64_pair();
    let hi = (gamma.abs() + 5.0).min(MAX_SCAN_HEIGHT);
    let zeros = scan_zeros(hi, DEFAULT_SCAN_STEP, ctx)?;
    let nearest_other = zeros
        .ordinates_f64()
        .into_iter()
        .map(|g| (g - gamma.abs()).abs())
        .filter(|&d| d > 1e-6)
        .fold(f64::INFINITY, f64::min);
    Ok(MAX_CIRCLE_RADIUS.min(nearest_other / 2.0))
}

fn circle_point(center: &Complex, r: &Float, theta: &Float) -> (Complex, Complex) {
    let prec = r.prec();
    let (sin, cos) = theta.clone().sin_cos(Float::new(prec));
    let e = Complex::new(cos, sin);
    (center.clone() + &e.scale(r), e)
}

fn circle_integral<F>(f: &F, ctx: &PrecisionContext) -> Result<crate::quadrature::AdaptiveOutcome<Complex>>
where
    F: Fn(&Float) -> Result<Sample<Complex>> + Sync,
{
    let prec = ctx.precision_bits();
    let two_pi = ctx.pi() * 2u32;
    let breaks: Vec<Float> = (0..=8u32).map(|k| Float::with_val(prec, &two_pi * k) / 8u32).collect();
    integrate_adaptive(f, &breaks, ctx.target_tol(), 4000, &GaussKronrod::g10k21(prec))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_shape() {
        let g = default_grid();
        assert_eq!(g.len(), 24);
        assert_eq!(g[0], 0.02);
        assert_eq!(g[11], 0.24);
        assert_eq!(g[12], 0.26);
        assert_eq!(g[23], 0.48);
        assert_eq!(eps_grid(0.1, 0.1, 1).unwrap(), vec![0.1]);
        assert!(eps_grid(0.0, 0.4, 3).is_err());
        assert!(eps_grid(0.1, 1.0, 3).is_err());
        assert!(eps_grid(0.1, 0.4, 0).is_err());
    }

    fn fake(values: &[f64], errs: &[f64]) -> SweepResult {
        SweepResult {
            eps_grid: (1..=values.len()).map(|k| k as f64 / 10.0).collect(),
            values: values.iter().map(|v| Float::with_val(64, *v)).collect(),
            err_bounds: errs.to_vec(),
            t_used: vec![40.0; values.len()],
            failures: vec![None; values.len()],
            reference: Float::with_val(64, values[0]),
            reference_err: errs[0],
            jumps: Vec::new(),
        }
    }

    #[test]
    fn jumps_above_threshold_only() {
        let r = fake(&[1.0, 1.0, 0.9, 0.9], &[1e-3; 4]);
        let flags = detect_jumps(&r, 5.0);
        assert_eq!(flags.len(), 1);
        assert_eq!((flags[0].eps_lo, flags[0].eps_hi), (0.2, 0.3));
        assert!(flags[0].significance > 5.0);
        assert!(detect_jumps(&r, f64::INFINITY).is_empty());
        let est = residue_from_jump(&flags[0], &r);
        assert!((est.residue.re.to_f64() + 0.05).abs() < 1e-12);
        assert_eq!(est.method, ResidueMethod::JumpDelta);
    }

    #[test]
    fn failed_points_break_pairs() {
        let mut r = fake(&[1.0, 2.0, 3.0], &[1e-3; 3]);
        r.failures[1] = Some("pole".into());
        assert!(detect_jumps(&r, 5.0).is_empty());
    }

    #[test]
    fn winding_zero_away_from_zeros() {
        let ctx = PrecisionContext::new(128, 1e-10).unwrap();
        let c = Complex::from_f64(128, 0.5, 17.0);
        assert_eq!(winding_number(&c, 0.05, &ctx).unwrap(), 0);
        assert!(matches!(
            residue_on_circle(&c, 0.05, &ctx),
            Err(Error::CircleContainsMultipleZeros { winding: 0, .. })
        ));
    }
}
