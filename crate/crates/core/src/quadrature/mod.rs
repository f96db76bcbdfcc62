//! Integrals of f and xi along vertical lines.
//!
//! Everything reduces to a real integral over [0, T] handled by the adaptive
//! Gauss-Kronrod engine, plus a tail beyond T bounded by a calibrated decay
//! model. Near every critical-line zero the panels are pre-split to a width
//! comparable to the distance from the line to the pole.

mod adaptive;
mod integrand;
mod rule;
mod tail;

use std::f64::consts::PI;

use rug::ops::Pow;
use rug::Float;

pub use adaptive::{integrate_adaptive, AdaptiveOutcome, QuadValue, Sample};
pub use integrand::{injected_contribution, InjectedPole, RatioIntegrand};
pub use rule::GaussKronrod;
pub use tail::{
    tail_bound, verify_ratio_model, verify_xi_model, xi_tail_bound, TailModel, DECAY_RATE,
    MIN_TAIL_HEIGHT,
};

use crate::complex::Complex;
use crate::error::{Error, Result};
use crate::precision::PrecisionContext;
use crate::special::xi;
use crate::zeros::{scan_zeros, ZeroList, DEFAULT_SCAN_STEP, MAX_SCAN_HEIGHT};

pub const DEFAULT_MAX_PANELS: usize = 20_000;
pub const DEFAULT_EPS_GUARD: f64 = 0.01;
pub const DEFAULT_T_CAP: f64 = 200.0;
/// Width of the initial panels away from any pole.
const BASE_PANEL_WIDTH: f64 = 2.0;
/// Breakpoints placed at gamma + j d/2 for |j| <= this.
const POLE_SPLITS: i32 = 4;

/// A vertical line Re s = sigma truncated at height `t_max`.
#[derive(Clone, Debug, PartialEq)]
pub struct ContourSpec {
    pub sigma: f64,
    pub t_max: f64,
    pub tol: f64,
    pub max_panels: usize,
}

impl ContourSpec {
    pub fn new(sigma: f64, t_max: f64, tol: f64, max_panels: usize) -> Result<Self> {
        let spec = Self {
            sigma,
            t_max,
            tol,
            max_panels,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.sigma > 0.5 && self.sigma <= 2.0) {
            return Err(Error::InvalidContour(format!(
                "sigma = {} must lie in (1/2, 2]",
                self.sigma
            )));
        }
        if !(self.t_max.is_finite() && self.t_max > 0.0) {
            return Err(Error::InvalidContour(format!("T = {} must be positive", self.t_max)));
        }
        if !(self.tol.is_finite() && self.tol > 0.0) {
            return Err(Error::InvalidContour(format!("tol = {} must be positive", self.tol)));
        }
        if self.max_panels == 0 {
            return Err(Error::InvalidContour("max_panels must be positive".into()));
        }
        Ok(())
    }
}

/// A real integral with its error split into quadrature and truncation parts.
#[derive(Clone, Debug, PartialEq)]
pub struct IntegralResult {
    pub value: Float,
    pub quad_err: f64,
    pub tail_err: f64,
    pub t_used: f64,
    pub panels: usize,
}

impl IntegralResult {
    pub fn total_err(&self) -> f64 {
        self.quad_err + self.tail_err
    }

    pub fn value_f64(&self) -> f64 {
        self.value.to_f64()
    }
}

/// Knobs for the line integrals.
#[derive(Clone, Debug)]
pub struct IntegralOptions {
    /// absolute tolerance on the final value; the context's when `None`
    pub tol: Option<f64>,
    /// smallest eps accepted by [`i_of_eps`]
    pub eps_guard: f64,
    /// ceiling for the automatic truncation height
    pub t_cap: f64,
    /// fixed truncation height, bypassing the tail model's choice
    pub t_override: Option<f64>,
    pub max_panels: usize,
    /// zero ordinates for panel control; scanned on demand when absent
    pub zeros: Option<ZeroList>,
}

impl Default for IntegralOptions {
    fn default() -> Self {
        Self {
            tol: None,
            eps_guard: DEFAULT_EPS_GUARD,
            t_cap: DEFAULT_T_CAP,
            t_override: None,
            max_panels: DEFAULT_MAX_PANELS,
            zeros: None,
        }
    }
}

impl IntegralOptions {
    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = Some(tol);
        self
    }

    pub fn with_t(mut self, t: f64) -> Self {
        self.t_override = Some(t);
        self
    }

    pub fn with_zeros(mut self, zeros: ZeroList) -> Self {
        self.zeros = Some(zeros);
        self
    }

    fn tolerance(&self, ctx: &PrecisionContext) -> Result<f64> {
        let tol = self.tol.unwrap_or(ctx.target_tol());
        if !(tol.is_finite() && tol > 0.0) {
            return Err(Error::Precondition(format!("tol = {tol} must be positive")));
        }
        Ok(tol)
    }
}

/// Integral of `integrand` over [0, spec.t_max] to absolute accuracy `spec.tol`.
/// No tail is added; `tail_err` is zero.
pub fn integrate_vertical<F>(integrand: &F, spec: &ContourSpec, ctx: &PrecisionContext) -> Result<IntegralResult>
where
    F: Fn(&Float) -> Result<Sample<Float>> + Sync,
{
    spec.validate()?;
    let prec = ctx.precision_bits();
    let breaks = uniform_breaks(0.0, spec.t_max, BASE_PANEL_WIDTH, prec);
    let wrapped = |t: &Float| integrand(t).map_err(|e| wrap_failure(e, t));
    let out = integrate_adaptive(&wrapped, &breaks, spec.tol, spec.max_panels, &GaussKronrod::g10k21(prec))?;
    Ok(IntegralResult {
        value: out.value,
        quad_err: out.err,
        tail_err: 0.0,
        t_used: spec.t_max,
        panels: out.panels,
    })
}

/// I(eps) = (1/pi) integral over [0, inf) of Re f(1/2 + eps + it) dt.
pub fn i_of_eps(eps: f64, ctx: &PrecisionContext, opts: &IntegralOptions) -> Result<IntegralResult> {
    i_of_eps_with(&RatioIntegrand::exact(), eps, ctx, opts)
}

/// [`i_of_eps`] for an arbitrary (possibly pole-injected) integrand.
pub fn i_of_eps_with(
    integrand: &RatioIntegrand,
    eps: f64,
    ctx: &PrecisionContext,
    opts: &IntegralOptions,
) -> Result<IntegralResult> {
    check_eps(eps, opts)?;
    ratio_line(integrand, eps, ctx, opts, Sides::Half)
}

/// (1/pi) integral over [0, inf) of Re f(3/2 + it) dt.
pub fn reference_value(ctx: &PrecisionContext, opts: &IntegralOptions) -> Result<IntegralResult> {
    reference_value_with(&RatioIntegrand::exact(), ctx, opts)
}

pub fn reference_value_with(
    integrand: &RatioIntegrand,
    ctx: &PrecisionContext,
    opts: &IntegralOptions,
) -> Result<IntegralResult> {
    ratio_line(integrand, 1.0, ctx, opts, Sides::Half)
}

/// I(eps) from the two-sided form (1/2pi) integral over the whole line of
/// f(1/2 + eps + it) dt, without using conjugate symmetry. Slower; meant for
/// cross-checking the half-line form.
pub fn i_of_eps_two_sided(
    integrand: &RatioIntegrand,
    eps: f64,
    ctx: &PrecisionContext,
    opts: &IntegralOptions,
) -> Result<IntegralResult> {
    check_eps(eps, opts)?;
    ratio_line(integrand, eps, ctx, opts, Sides::Full)
}

/// J(eps) = integral over the whole line of xi(1/2 + eps + it) dt, computed
/// as 2 times the half-line integral of the real part.
pub fn j_of_eps(eps: f64, ctx: &PrecisionContext, opts: &IntegralOptions) -> Result<IntegralResult> {
    xi_line(eps, ctx, opts, Sides::Half)
}

/// J(eps) integrating the complex values over [-T, T] directly.
pub fn j_of_eps_two_sided(eps: f64, ctx: &PrecisionContext, opts: &IntegralOptions) -> Result<IntegralResult> {
    xi_line(eps, ctx, opts, Sides::Full)
}

/// (pi^(1/4) / sqrt 32) Gamma(1/4) [Gamma(1/4)^8 / (32 pi^4) - 3]
pub fn closed_form_j(ctx: &PrecisionContext) -> Float {
    let prec = ctx.precision_bits() + 32;
    let pi = Float::with_val(prec, rug::float::Constant::Pi);
    let g = Float::with_val(prec, 0.25).gamma();
    let g8 = Float::with_val(prec, &g).pow(8u32);
    let pi4 = Float::with_val(prec, &pi).pow(4u32);
    let bracket = g8 / (pi4 * 32u32) - 3u32;
    let lead = Float::with_val(prec, &pi).pow(0.25f64) / Float::with_val(prec, 32u32).sqrt();
    Float::with_val(ctx.precision_bits(), lead * g * bracket)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Sides {
    Half,
    Full,
}

fn check_eps(eps: f64, opts: &IntegralOptions) -> Result<()> {
    if !(eps > 0.0 && eps <= 1.0) {
        return Err(Error::Precondition(format!("eps = {eps} must lie in (0, 1]")));
    }
    if eps < opts.eps_guard {
        return Err(Error::Precondition(format!(
            "eps = {eps} is below the guard {}",
            opts.eps_guard
        )));
    }
    Ok(())
}

fn ratio_line(
    integrand: &RatioIntegrand,
    eps: f64,
    ctx: &PrecisionContext,
    opts: &IntegralOptions,
    sides: Sides,
) -> Result<IntegralResult> {
    let prec = ctx.precision_bits();
    let tol = opts.tolerance(ctx)?;
    let sigma = Float::with_val(prec, 0.5) + Float::with_val(prec, eps);
    let sigma_f = sigma.to_f64();
    let model = TailModel::ratio(sigma_f)?;
    // pi * tol/2 for each of quadrature and tail, before dividing by pi
    let budget = PI * tol / 2.0;
    let t_max = match opts.t_override {
        Some(t) => t,
        None => model.truncation_height(budget, opts.t_cap)?,
    };
    ContourSpec::new(sigma_f, t_max, tol, opts.max_panels)?;
    let tail_raw = model.integral_from(t_max)?;

    let scanned;
    let zeros = match &opts.zeros {
        Some(z) if z.t_max >= t_max.min(MAX_SCAN_HEIGHT) => z,
        _ => {
            scanned = scan_zeros((t_max + 1.0).min(MAX_SCAN_HEIGHT), DEFAULT_SCAN_STEP, ctx)?;
            &scanned
        }
    };
    let mut centers: Vec<(f64, f64)> = zeros.ordinates_f64().into_iter().map(|g| (g, eps)).collect();
    for (x0, y0) in integrand.pole_positions() {
        centers.push((y0, (sigma_f - x0).abs().min(1.0)));
    }
    let lower = if sides == Sides::Full { -t_max } else { 0.0 };
    let breaks = pole_aware_breaks(lower, t_max, &centers, prec);

    let ectx = ctx.tightened(tol / 16.0);
    let rule = GaussKronrod::g10k21(prec);
    let t_float = Float::with_val(prec, t_max);
    match sides {
        Sides::Half => {
            let f = |t: &Float| {
                let s = Complex::new(sigma.clone(), t.clone());
                let r = integrand.eval(&s, &ectx).map_err(|e| pole_or_failure(e, sigma_f, t))?;
                Ok(Sample {
                    value: r.value.re,
                    err: r.err_bound,
                })
            };
            let out = integrate_adaptive(&f, &breaks, budget, opts.max_panels, &rule)?;
            let total = out.value + integrand.injected_tail(&sigma, &t_float)?;
            let pi = ctx.pi();
            Ok(IntegralResult {
                value: total / &pi,
                quad_err: out.err / PI,
                tail_err: tail_raw / PI,
                t_used: t_max,
                panels: out.panels,
            })
        }
        Sides::Full => {
            let f = |t: &Float| {
                let s = Complex::new(sigma.clone(), t.clone());
                let r = integrand.eval(&s, &ectx).map_err(|e| pole_or_failure(e, sigma_f, t))?;
                Ok(Sample {
                    value: r.value,
                    err: r.err_bound,
                })
            };
            // the full line carries twice the half-line tail; quadrature gets the same 2 pi tol/2
            let out: AdaptiveOutcome<Complex> = integrate_adaptive(&f, &breaks, 2.0 * budget, opts.max_panels, &rule)?;
            let total = out.value.re + integrand.injected_tail_two_sided(&sigma, &t_float)?;
            let two_pi = ctx.pi() * 2u32;
            Ok(IntegralResult {
                value: total / &two_pi,
                quad_err: out.err / (2.0 * PI),
                tail_err: 2.0 * tail_raw / (2.0 * PI),
                t_used: t_max,
                panels: out.panels,
            })
        }
    }
}

fn xi_line(eps: f64, ctx: &PrecisionContext, opts: &IntegralOptions, sides: Sides) -> Result<IntegralResult> {
    if !(eps >= 0.0 && eps <= 1.5) {
        return Err(Error::Precondition(format!("eps = {eps} must lie in [0, 3/2]")));
    }
    let prec = ctx.precision_bits();
    let tol = opts.tolerance(ctx)?;
    let sigma = Float::with_val(prec, 0.5) + Float::with_val(prec, eps);
    let model = TailModel::xi(sigma.to_f64())?;
    // the half-line pieces are doubled, so each gets tol/4
    let budget = tol / 4.0;
    let t_max = match opts.t_override {
        Some(t) => t,
        None => model.truncation_height(budget, opts.t_cap)?,
    };
    if !(t_max.is_finite() && t_max > 0.0) {
        return Err(Error::InvalidContour(format!("T = {t_max} must be positive")));
    }
    let tail_raw = model.integral_from(t_max)?;
    let ectx = ctx.tightened(tol / 16.0);
    let rule = GaussKronrod::g10k21(prec);
    let eval = |t: &Float| -> Result<(Complex, f64)> {
        let s = Complex::new(sigma.clone(), t.clone());
        let r = xi(&s, &ectx).map_err(|e| wrap_failure(e, t))?;
        Ok((r.value, r.err_bound))
    };
    match sides {
        Sides::Half => {
            let breaks = uniform_breaks(0.0, t_max, BASE_PANEL_WIDTH, prec);
            let f = |t: &Float| eval(t).map(|(v, err)| Sample { value: v.re, err });
            let out = integrate_adaptive(&f, &breaks, budget, opts.max_panels, &rule)?;
            Ok(IntegralResult {
                value: out.value * 2u32,
                quad_err: 2.0 * out.err,
                tail_err: 2.0 * tail_raw,
                t_used: t_max,
                panels: out.panels,
            })
        }
        Sides::Full => {
            let breaks = uniform_breaks(-t_max, t_max, BASE_PANEL_WIDTH, prec);
            let f = |t: &Float| eval(t).map(|(value, err)| Sample { value, err });
            let out: AdaptiveOutcome<Complex> = integrate_adaptive(&f, &breaks, 2.0 * budget, opts.max_panels, &rule)?;
            Ok(IntegralResult {
                value: out.value.re,
                quad_err: out.err,
                tail_err: 2.0 * tail_raw,
                t_used: t_max,
                panels: out.panels,
            })
        }
    }
}

fn pole_or_failure(e: Error, sigma: f64, t: &Float) -> Error {
    match e {
        Error::NearZeroDivisor { .. } => Error::NearPoleOnContour { sigma, t: t.to_f64() },
        other => wrap_failure(other, t),
    }
}

fn wrap_failure(e: Error, t: &Float) -> Error {
    match e {
        Error::NonFiniteIntegrand { .. } | Error::NearPoleOnContour { .. } => e,
        other => Error::NonFiniteIntegrand {
            t: t.to_f64(),
            source: Box::new(other),
        },
    }
}

fn uniform_breaks(lo: f64, hi: f64, width: f64, prec: u32) -> Vec<Float> {
    let n = ((hi - lo) / width).ceil().max(1.0) as usize;
    let mut out: Vec<Float> = (0..n).map(|k| Float::with_val(prec, lo + k as f64 * width)).collect();
    out.push(Float::with_val(prec, hi));
    out
}

/// Uniform breakpoints on [lo, hi] plus, for each (center, d), the points
/// center + j d/2 for |j| <= 4 (mirrored when lo < 0).
fn pole_aware_breaks(lo: f64, hi: f64, centers: &[(f64, f64)], prec: u32) -> Vec<Float> {
    let mut pts: Vec<f64> = uniform_breaks(lo, hi, BASE_PANEL_WIDTH, 53).iter().map(Float::to_f64).collect();
    for &(c, d) in centers {
        for sign in [1.0, -1.0] {
            if sign < 0.0 && lo >= 0.0 {
                continue;
            }
            for j in -POLE_SPLITS..=POLE_SPLITS {
                let p = sign * (c + j as f64 * d / 2.0);
                if p > lo && p < hi {
                    pts.push(p);
                }
            }
        }
    }
    pts.sort_by(f64::total_cmp);
    let min_gap = (hi - lo) * 1e-12;
    let mut out: Vec<f64> = Vec::with_capacity(pts.len());
    for p in pts {
        match out.last() {
            Some(&last) if p - last <= min_gap => {}
            _ => out.push(p),
        }
    }
    if let Some(last) = out.last_mut() {
        *last = hi;
    }
    out.into_iter().map(|p| Float::with_val(prec, p)).collect()
}
