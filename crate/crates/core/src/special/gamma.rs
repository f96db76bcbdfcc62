use std::f64::consts::PI;

use rug::Float;

use super::EvalResult;
use crate::complex::Complex;
use crate::error::{Error, Result};
use crate::precision::PrecisionContext;

/// Principal branch of log Gamma(z), continuous off the negative real axis.
///
/// Stirling's series is applied at w = z + K, with K chosen so that |w| is
/// large enough for the requested tolerance, and the shift is undone with
/// log Gamma(z) = log Gamma(w) - log(z (z+1) ... (z+K-1)).
pub fn log_gamma(z: &Complex, ctx: &PrecisionContext) -> Result<EvalResult> {
    check_pole(z, ctx)?;
    let prec = ctx.precision_bits();
    let tau = ctx.series_tol();
    let (x, y) = z.to_f64_pair();
    let plan = plan_stirling(x, y, tau)?;

    let w = z.add_f64(plan.shift as f64);
    let ln_w = w.ln();
    let ratios = ctx.bernoulli_ratios(plan.terms.max(1));

    let half = ctx.float(0.5);
    let ln_two_pi = Float::with_val(prec, ctx.pi() * 2u32).ln();
    let mut sum = (w.add_real(&-half.clone()) * &ln_w) - &w;
    sum.re += Float::with_val(prec, &ln_two_pi / 2u32);

    let w_inv = w.recip();
    let w_inv2 = w_inv.sqr();
    let mut power = w_inv;
    let mut factorial = Float::with_val(prec, 1);
    for k in 1..=plan.terms {
        if k > 1 {
            factorial *= ((2 * k - 3) * (2 * k - 2)) as u32;
        }
        let coeff = Float::with_val(prec, &ratios[k - 1] * &factorial);
        sum = sum + &power.scale(&coeff);
        power = power * &w_inv2;
    }

    if plan.shift > 0 {
        let mut product = z.clone();
        let mut arg_total = y.atan2(x);
        for k in 1..plan.shift {
            let zk = z.add_f64(k as f64);
            arg_total += y.atan2(x + k as f64);
            product = product * &zk;
        }
        let mut log_product = product.ln();
        let branch = ((arg_total - log_product.im.to_f64()) / (2.0 * PI)).round();
        if branch != 0.0 {
            log_product.im += Float::with_val(prec, ctx.pi() * (2.0 * branch));
        }
        sum = sum - &log_product;
    }

    let sum = sum.check_finite("log_gamma")?;
    let magnitude = w.hypot_f64() * ln_w.hypot_f64().max(1.0) + sum.hypot_f64();
    let rounding = 16.0 * ctx.unit_roundoff() * magnitude * (plan.terms + plan.shift + 4) as f64;
    Ok(EvalResult::new(sum, plan.remainder + rounding, ctx.target_tol()))
}

/// Gamma(z) = exp(log Gamma(z)).
pub fn gamma(z: &Complex, ctx: &PrecisionContext) -> Result<EvalResult> {
    let lg = log_gamma(z, ctx)?;
    let value = lg.value.exp().check_finite("gamma")?;
    let err = value.hypot_f64() * lg.err_bound;
    Ok(EvalResult::new(value, err, ctx.target_tol()))
}

fn check_pole(z: &Complex, ctx: &PrecisionContext) -> Result<()> {
    let (x, _) = z.to_f64_pair();
    let nearest = x.round();
    if nearest <= 0.0 {
        let dist = z.add_f64(-nearest).hypot_f64();
        let radius = 2f64.powf(-(ctx.precision_bits() as f64) / 2.0);
        if dist < radius {
            return Err(Error::Pole {
                function: "log_gamma",
                at: z.to_string(),
            });
        }
    }
    Ok(())
}

struct StirlingPlan {
    shift: usize,
    terms: usize,
    remainder: f64,
}

const MAX_STIRLING_TERMS: usize = 600;
const MAX_SHIFT: usize = 100_000;

/// Picks the shift and term count so the Stirling remainder falls below `tau`.
///
/// For Re w > 0 the remainder after k terms is bounded by the first omitted
/// term times sec^(2k+2)(arg(w)/2).
fn plan_stirling(x: f64, y: f64, tau: f64) -> Result<StirlingPlan> {
    let radius = ((1.0 / tau).ln() / (2.0 * PI) * 1.5).max(2.0);
    let mut shift = {
        let need_re = (1.0 - x).max(0.0);
        let need_abs = if x.hypot(y) >= radius {
            0.0
        } else {
            (radius * radius - y * y).max(0.0).sqrt() - x
        };
        need_re.max(need_abs).max(0.0).ceil() as usize
    };
    loop {
        let wx = x + shift as f64;
        let ln_abs_w = wx.hypot(y).ln();
        let ln_sec_half = -((y.atan2(wx) / 2.0).cos().ln());
        let mut ln_fact = 0.0; // ln (2k-2)!
        for k in 1..=MAX_STIRLING_TERMS {
            // bound for stopping after k-1 terms uses term k
            if k > 1 {
                ln_fact += (((2 * k - 3) * (2 * k - 2)) as f64).ln();
            }
            let ln_term = ln_bernoulli_ratio(k) + ln_fact - (2 * k - 1) as f64 * ln_abs_w;
            let ln_bound = ln_term + (2 * k) as f64 * ln_sec_half;
            if ln_bound < tau.ln() {
                return Ok(StirlingPlan {
                    shift,
                    terms: k - 1,
                    remainder: ln_bound.exp(),
                });
            }
        }
        shift += (radius / 2.0).ceil() as usize + 1;
        if shift > MAX_SHIFT {
            return Err(Error::Precision {
                tol: tau,
                bits: 0,
                detail: "Stirling series cannot reach the tolerance".into(),
            });
        }
    }
}

/// ln |B_{2k}/(2k)!| = ln 2 + ln zeta(2k) - 2k ln(2 pi)
pub(crate) fn ln_bernoulli_ratio(k: usize) -> f64 {
    let two_k = (2 * k) as f64;
    let zeta_2k = if k == 1 {
        PI * PI / 6.0
    } else {
        1.0 + 2f64.powf(-two_k) + 3f64.powf(-two_k) + 4f64.powf(-two_k)
    };
    2f64.ln() + zeta_2k.ln() - two_k * (2.0 * PI).ln()
}
