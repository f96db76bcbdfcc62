use rug::Float;

use super::gamma::log_gamma;
use super::zeta::FusedZeta;
use super::{EvalFlags, EvalResult};
use crate::complex::Complex;
use crate::error::{Error, Result};
use crate::precision::PrecisionContext;

/// xi(s) = (s-1) pi^(-s/2) Gamma(1+s/2) zeta(s), evaluated with (s-1)zeta(s)
/// as one quantity so that s = 1 is regular.
pub fn xi(s: &Complex, ctx: &PrecisionContext) -> Result<EvalResult> {
    let parts = XiParts::eval(s, ctx)?;
    Ok(EvalResult::new(parts.value, parts.err, ctx.target_tol()))
}

/// |pi^(-s/2) Gamma(1+s/2)|, the smooth factor multiplying (s-1)zeta(s).
pub fn xi_envelope(s: &Complex, ctx: &PrecisionContext) -> Result<f64> {
    Ok(Envelope::eval(s, ctx)?.value.hypot_f64())
}

/// f(s) = xi(2s)/xi(s).
///
/// Fails with `NearZeroDivisor` when |zeta(s)| drops below the context's pole
/// threshold or is not resolved by its own error bound.
pub fn f_ratio(s: &Complex, ctx: &PrecisionContext) -> Result<EvalResult> {
    let two_s = s.scale_f64(2.0);
    let den = XiParts::eval(s, ctx)?;
    let zeta_abs = den.zeta_abs(s);
    if zeta_abs < ctx.pole_threshold() || zeta_abs <= 4.0 * den.zeta_err {
        return Err(Error::NearZeroDivisor {
            at: s.to_string(),
            zeta_abs,
        });
    }
    let num = XiParts::eval(&two_s, ctx)?;
    let value = (num.value.clone() / &den.value).check_finite("f_ratio")?;
    let den_abs = den.value.hypot_f64();
    let from_num = num.err / den_abs;
    let from_den = value.hypot_f64() * den.err / den_abs;
    let err_bound = from_num + from_den;
    let mut flags = EvalFlags::NONE;
    if err_bound > ctx.target_tol() {
        if from_den > from_num {
            flags.insert(EvalFlags::NEAR_POLE);
        } else {
            flags.insert(EvalFlags::CANCELLATION);
        }
    }
    Ok(EvalResult {
        value,
        err_bound,
        flags,
    })
}

/// |xi(s) - xi(1-s)|, zero in exact arithmetic.
pub fn xi_symmetry_residual(s: &Complex, ctx: &PrecisionContext) -> Result<f64> {
    let a = xi(s, ctx)?;
    let reflected = Complex::one(ctx.precision_bits()) - s;
    let b = xi(&reflected, ctx)?;
    Ok((a.value - &b.value).hypot_f64())
}

/// The pieces of xi(s) needed by the ratio: value, error, and the fused zeta.
pub(crate) struct XiParts {
    pub value: Complex,
    pub err: f64,
    fused: Complex,
    pub zeta_err: f64,
}

impl XiParts {
    pub fn eval(s: &Complex, ctx: &PrecisionContext) -> Result<Self> {
        let fused = FusedZeta::eval(s, ctx)?;
        let env = Envelope::eval(s, ctx)?;
        let value = (fused.value.clone() * &env.value).check_finite("xi")?;
        let env_abs = env.value.hypot_f64();
        let err = env_abs * fused.err + value.hypot_f64() * env.rel_err;
        Ok(Self {
            value,
            err,
            fused: fused.value,
            zeta_err: fused.zeta_err,
        })
    }

    /// |zeta(s)|; infinite at s = 1.
    pub fn zeta_abs(&self, s: &Complex) -> f64 {
        let d = s.add_f64(-1.0).hypot_f64();
        if d == 0.0 {
            f64::INFINITY
        } else {
            self.fused.hypot_f64() / d
        }
    }
}

struct Envelope {
    value: Complex,
    rel_err: f64,
}

impl Envelope {
    /// pi^(-s/2) Gamma(1 + s/2) = exp(log Gamma(1 + s/2) - (s/2) ln pi)
    fn eval(s: &Complex, ctx: &PrecisionContext) -> Result<Self> {
        let prec = ctx.precision_bits();
        let half_s = s.scale_f64(0.5);
        let lg = log_gamma(&half_s.add_f64(1.0), ctx)?;
        let ln_pi = Float::with_val(prec, ctx.pi().ln_ref());
        let exponent = lg.value - &half_s.scale(&ln_pi);
        let value = exponent.exp().check_finite("xi envelope")?;
        let rounding = 8.0 * ctx.unit_roundoff() * (1.0 + exponent.hypot_f64());
        Ok(Self {
            value,
            rel_err: lg.err_bound + rounding,
        })
    }
}
