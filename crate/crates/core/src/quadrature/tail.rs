//! Calibrated decay models for truncating the half-line integrals.
//!
//! Both |f(sigma+it)| and |xi(sigma+it)| decay like e^(-pi t/4) times a power
//! of t. The constants below were fitted by sampling t in [10, 80] on a 0.05
//! grid and then multiplied by a safety factor of 4:
//!
//! * f: max |f| e^(pi t/4) t^(-sigma/2) was at most about 5/(sigma - 1/2)
//!   for sigma in [0.51, 1.5], the peak sitting at the first zero ordinate.
//! * xi: max |xi| e^(pi t/4) t^(-(sigma+3)/2 - 1/4) was at most 1.62.

use std::f64::consts::PI;

use rug::Float;

use crate::complex::Complex;
use crate::error::{Error, Result};
use crate::precision::PrecisionContext;
use crate::special::{f_ratio, xi};

/// Exponential decay rate pi/4 shared by both models.
pub const DECAY_RATE: f64 = PI / 4.0;
pub const MIN_TAIL_HEIGHT: f64 = 10.0;
const SAFETY: f64 = 4.0;

/// Pointwise envelope C t^a e^(-pi t/4) and its integrated tail.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TailModel {
    pub constant: f64,
    pub exponent: f64,
}

impl TailModel {
    /// Model for |f(sigma + it)|, sigma in (1/2, 2].
    pub fn ratio(sigma: f64) -> Result<Self> {
        if !(sigma > 0.5 && sigma <= 2.0) {
            return Err(Error::Precondition(format!(
                "tail model for f needs sigma in (1/2, 2], got {sigma}"
            )));
        }
        Ok(Self {
            constant: SAFETY * (1.0 + 6.0 / (sigma - 0.5)),
            exponent: sigma / 2.0,
        })
    }

    /// Model for |xi(sigma + it)|, sigma in [0, 2].
    pub fn xi(sigma: f64) -> Result<Self> {
        if !(0.0..=2.0).contains(&sigma) {
            return Err(Error::Precondition(format!(
                "tail model for xi needs sigma in [0, 2], got {sigma}"
            )));
        }
        Ok(Self {
            constant: SAFETY * 2.0,
            exponent: (sigma + 3.0) / 2.0 + 0.25,
        })
    }

    /// C t^a e^(-pi t/4)
    pub fn pointwise(&self, t: f64) -> f64 {
        self.constant * t.powf(self.exponent) * (-DECAY_RATE * t).exp()
    }

    /// Bound on the integral of the envelope over [T, inf):
    /// C T^a e^(-pi T/4) / (pi/4 - a/T).
    pub fn integral_from(&self, t: f64) -> Result<f64> {
        if !(t >= MIN_TAIL_HEIGHT) {
            return Err(Error::Precondition(format!(
                "tail bound needs T >= {MIN_TAIL_HEIGHT}, got {t}"
            )));
        }
        let rate = DECAY_RATE - self.exponent / t;
        Ok(self.pointwise(t) / rate)
    }

    /// Smallest T in [10, t_cap] (on a 1/4 grid) whose tail bound is at most
    /// `budget`; `t_cap` itself when no such T exists.
    pub fn truncation_height(&self, budget: f64, t_cap: f64) -> Result<f64> {
        let cap = t_cap.max(MIN_TAIL_HEIGHT);
        if self.integral_from(cap)? > budget {
            return Ok(cap);
        }
        let (mut lo, mut hi) = (MIN_TAIL_HEIGHT, cap);
        if self.integral_from(lo)? <= budget {
            return Ok(lo);
        }
        while hi - lo > 0.25 {
            let mid = 0.5 * (lo + hi);
            if self.integral_from(mid)? <= budget {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        Ok(((hi * 4.0).ceil() / 4.0).min(cap))
    }
}

/// Bound on |integral over [T, inf) of Re f(sigma + it) dt|.
pub fn tail_bound(sigma: f64, t: f64, _ctx: &PrecisionContext) -> Result<f64> {
    TailModel::ratio(sigma)?.integral_from(t)
}

/// Bound on |integral over [T, inf) of Re xi(sigma + it) dt|.
pub fn xi_tail_bound(sigma: f64, t: f64) -> Result<f64> {
    TailModel::xi(sigma)?.integral_from(t)
}

/// Samples |f(sigma + it)| at the given heights and fails with
/// `Calibration` if any sample exceeds the pointwise envelope.
pub fn verify_ratio_model(sigma: f64, heights: &[f64], ctx: &PrecisionContext) -> Result<()> {
    let model = TailModel::ratio(sigma)?;
    let prec = ctx.precision_bits();
    for &t in heights {
        let s = Complex::new(Float::with_val(prec, sigma), Float::with_val(prec, t));
        let sampled = f_ratio(&s, ctx)?.value.hypot_f64();
        let bound = model.pointwise(t);
        if sampled > bound {
            return Err(Error::Calibration {
                sigma,
                t,
                sampled,
                model: bound,
            });
        }
    }
    Ok(())
}

/// Same check for |xi(sigma + it)|.
pub fn verify_xi_model(sigma: f64, heights: &[f64], ctx: &PrecisionContext) -> Result<()> {
    let model = TailModel::xi(sigma)?;
    let prec = ctx.precision_bits();
    for &t in heights {
        let s = Complex::new(Float::with_val(prec, sigma), Float::with_val(prec, t));
        let sampled = xi(&s, ctx)?.value.hypot_f64();
        let bound = model.pointwise(t);
        if sampled > bound {
            return Err(Error::Calibration {
                sigma,
                t,
                sampled,
                model: bound,
            });
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bound_decreases_in_t() {
        let ctx = PrecisionContext::default();
        let mut last = f64::INFINITY;
        for k in 0..40 {
            let t = 10.0 + 5.0 * k as f64;
            let b = tail_bound(1.5, t, &ctx).unwrap();
            assert!(b < last);
            last = b;
        }
    }

    #[test]
    fn doubling_ratio_at_three_halves() {
        let ctx = PrecisionContext::default();
        let a = 0.75;
        for t in [10.0, 20.0, 40.0] {
            let ratio = tail_bound(1.5, 2.0 * t, &ctx).unwrap() / tail_bound(1.5, t, &ctx).unwrap();
            assert!(ratio <= (-DECAY_RATE * t).exp() * 2f64.powf(a) * (1.0 + 1e-12));
        }
    }

    #[test]
    fn rejects_low_heights_and_bad_sigma() {
        let ctx = PrecisionContext::default();
        assert!(tail_bound(1.5, 5.0, &ctx).is_err());
        assert!(tail_bound(0.5, 20.0, &ctx).is_err());
        assert!(tail_bound(2.5, 20.0, &ctx).is_err());
    }

    #[test]
    fn truncation_height_meets_budget() {
        let m = TailModel::ratio(0.75).unwrap();
        let t = m.truncation_height(1e-12, 200.0).unwrap();
        assert!(m.integral_from(t).unwrap() <= 1e-12);
        assert!(m.integral_from(t - 0.5).unwrap() > 1e-12);
        assert!(t > 30.0 && t < 60.0, "{t}");
    }

    #[test]
    fn sampled_ratio_respects_model() {
        let ctx = PrecisionContext::new(128, 1e-10).unwrap();
        verify_ratio_model(1.5, &[20.0, 30.0, 40.0], &ctx).unwrap();
        verify_ratio_model(0.6, &[14.13, 21.02, 25.01, 40.0], &ctx).unwrap();
        verify_xi_model(0.5, &[10.0, 20.0, 30.0, 40.0], &ctx).unwrap();
    }
}
