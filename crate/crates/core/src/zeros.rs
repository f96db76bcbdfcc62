//! Zeros of zeta on the critical line, located as sign changes of the real
//! function Xi(t) = xi(1/2 + it).

use std::io::Write;

use rayon::prelude::*;
use rug::Float;

use crate::complex::Complex;
use crate::error::{Error, Result};
use crate::precision::PrecisionContext;
use crate::special::xi;

/// Highest ordinate the scanner accepts.
pub const MAX_SCAN_HEIGHT: f64 = 200.0;
pub const DEFAULT_SCAN_STEP: f64 = 0.25;

/// Critical-line zero ordinates with enclosure half-widths.
#[derive(Clone, Debug)]
pub struct ZeroList {
    pub ordinates: Vec<Float>,
    pub radii: Vec<f64>,
    pub t_max: f64,
    /// Non-fatal diagnostics such as `StepTooCoarse`.
    pub warnings: Vec<Error>,
}

impl ZeroList {
    pub fn empty(t_max: f64) -> Self {
        Self {
            ordinates: Vec::new(),
            radii: Vec::new(),
            t_max,
            warnings: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.ordinates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ordinates.is_empty()
    }

    pub fn ordinates_f64(&self) -> Vec<f64> {
        self.ordinates.iter().map(Float::to_f64).collect()
    }

    /// CSV with columns n, gamma, radius.
    pub fn write_csv<W: Write>(&self, out: W, digits: usize) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["n", "gamma", "radius"])
            .map_err(|e| Error::Io(e.to_string()))?;
        for (i, (g, r)) in self.ordinates.iter().zip(&self.radii).enumerate() {
            w.write_record([
                (i + 1).to_string(),
                g.to_string_radix(10, Some(digits)),
                format!("{r:e}"),
            ])
            .map_err(|e| Error::Io(e.to_string()))?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Xi(t) = xi(1/2 + it) with its error bound. The imaginary part is zero up
/// to rounding and is discarded.
pub fn hardy_xi(t: &Float, ctx: &PrecisionContext) -> Result<(Float, f64)> {
    let prec = ctx.precision_bits();
    let s = Complex::new(Float::with_val(prec, 0.5), Float::with_val(prec, t));
    let r = xi(&s, ctx)?;
    Ok((r.value.re, r.err_bound))
}

/// Context used while refining brackets: accurate enough to resolve the sign
/// of Xi within 2^(-precision_bits/4) of a simple zero.
fn refinement_context(ctx: &PrecisionContext) -> Result<PrecisionContext> {
    let p = ctx.precision_bits() as i32;
    let g = ctx.guard_bits() as i32;
    let want = 2f64.powi(-(p / 4) - 12);
    let floor = 2f64.powi(-(p - g));
    ctx.with_target_tol(want.max(floor).min(ctx.target_tol()))
}

/// All sign changes of Xi on [0, t_max] at resolution `step`, each refined
/// with [`refine_zero`].
pub fn scan_zeros(t_max: f64, step: f64, ctx: &PrecisionContext) -> Result<ZeroList> {
    if !(t_max.is_finite() && t_max >= 0.0) || t_max > MAX_SCAN_HEIGHT {
        return Err(Error::Precondition(format!(
            "t_max = {t_max} must lie in [0, {MAX_SCAN_HEIGHT}]"
        )));
    }
    if !(step > 0.0 && step <= 0.5) {
        return Err(Error::Precondition(format!("step = {step} must lie in (0, 0.5]")));
    }
    let prec = ctx.precision_bits();
    let count = (t_max / step).ceil() as usize;
    let grid: Vec<f64> = (0..=count).map(|k| (k as f64 * step).min(t_max)).collect();
    let values: Vec<Float> = grid
        .par_iter()
        .map(|&t| hardy_xi(&Float::with_val(prec, t), ctx).map(|(v, _)| v))
        .collect::<Result<Vec<_>>>()?;

    let brackets: Vec<(f64, f64)> = grid
        .windows(2)
        .zip(values.windows(2))
        .filter(|(_, v)| v[0].is_sign_positive() != v[1].is_sign_positive() && !v[1].is_zero())
        .map(|(t, _)| (t[0], t[1]))
        .collect();
    let refined: Vec<(Float, f64)> = brackets
        .par_iter()
        .map(|&(lo, hi)| refine_zero(lo, hi, ctx))
        .collect::<Result<Vec<_>>>()?;

    let mut list = ZeroList::empty(t_max);
    for (g, r) in refined {
        list.ordinates.push(g);
        list.radii.push(r);
    }
    let expected = smooth_zero_count(t_max);
    if (list.len() as f64) < expected.round() - 1.0 {
        list.warnings.push(Error::StepTooCoarse { step, t: t_max });
    }
    Ok(list)
}

/// Riemann-von Mangoldt main term theta(T)/pi + 1 for the zero count up to T.
pub fn smooth_zero_count(t: f64) -> f64 {
    if t < 10.0 {
        return 0.0;
    }
    let two_pi = 2.0 * std::f64::consts::PI;
    let theta = t / 2.0 * (t / two_pi).ln() - t / 2.0 - std::f64::consts::PI / 8.0 + 1.0 / (48.0 * t);
    theta / std::f64::consts::PI + 1.0
}

/// Shrinks a sign-changing bracket of Xi to width 2^(-precision_bits/4) using
/// Illinois steps with a bisection fallback. Returns (midpoint, half-width).
pub fn refine_zero(lo: f64, hi: f64, ctx: &PrecisionContext) -> Result<(Float, f64)> {
    if !(lo < hi) {
        return Err(Error::Precondition(format!("bracket [{lo}, {hi}] is empty")));
    }
    let rctx = refinement_context(ctx)?;
    let prec = ctx.precision_bits();
    let mut a = Float::with_val(prec, lo);
    let mut b = Float::with_val(prec, hi);
    let (mut fa, _) = hardy_xi(&a, &rctx)?;
    let (mut fb, _) = hardy_xi(&b, &rctx)?;
    if fa.is_sign_positive() == fb.is_sign_positive() && !fa.is_zero() && !fb.is_zero() {
        return Err(Error::NoSignChange { lo, hi });
    }
    let target = 2f64.powf(-(prec as f64) / 4.0);
    let mut side = 0i8;
    for iter in 0..(4 * prec) {
        let width = Float::with_val(prec, &b - &a).to_f64();
        if width <= 2.0 * target {
            break;
        }
        // every fourth step bisects so a stalled Illinois sequence still halves the bracket
        let use_secant = iter % 4 != 3 && !fa.is_zero() && !fb.is_zero();
        let mut x = if use_secant {
            // a - fa (b - a) / (fb - fa)
            let num = Float::with_val(prec, &fa * Float::with_val(prec, &b - &a));
            let den = Float::with_val(prec, &fb - &fa);
            Float::with_val(prec, &a - num / den)
        } else {
            Float::with_val(prec, &a + &b) / 2u32
        };
        if !(x > a && x < b) {
            x = Float::with_val(prec, &a + &b) / 2u32;
        }
        let (fx, err) = hardy_xi(&x, &rctx)?;
        if fx.is_zero() || Float::with_val(64, fx.abs_ref()).to_f64() <= err {
            // sign unresolved: x is within the error band of the zero
            let half = width.min(target.max(err_to_width(&x, err, &rctx)?));
            return Ok((x, half));
        }
        if fx.is_sign_positive() == fa.is_sign_positive() {
            a = x;
            fa = fx;
            if side == -1 {
                fb /= 2u32;
            }
            side = -1;
        } else {
            b = x;
            fb = fx;
            if side == 1 {
                fa /= 2u32;
            }
            side = 1;
        }
    }
    let mid = Float::with_val(prec, &a + &b) / 2u32;
    let half = Float::with_val(prec, &b - &a).to_f64() / 2.0;
    Ok((mid, half))
}

/// Rough width of the band where |Xi| <= err, from a difference quotient.
fn err_to_width(t: &Float, err: f64, ctx: &PrecisionContext) -> Result<f64> {
    let prec = ctx.precision_bits();
    let h = 1e-6;
    let (f1, _) = hardy_xi(&Float::with_val(prec, t + h), ctx)?;
    let (f0, _) = hardy_xi(&Float::with_val(prec, t - h), ctx)?;
    let slope = Float::with_val(prec, f1 - f0).to_f64().abs() / (2.0 * h);
    Ok(if slope > 0.0 { err / slope } else { f64::INFINITY })
}
