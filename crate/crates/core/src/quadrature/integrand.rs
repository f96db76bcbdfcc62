use rug::Float;

use crate::complex::Complex;
use crate::error::{Error, Result};
use crate::precision::PrecisionContext;
use crate::special::{f_ratio, EvalResult};

/// A synthetic simple pole c/(s - s0), always paired with its mirror
/// conj(c)/(s - conj(s0)) so the integrand stays real on the real axis.
#[derive(Clone, Debug)]
pub struct InjectedPole {
    pub coefficient: Complex,
    pub location: Complex,
}

/// The contour integrand: f(s) = xi(2s)/xi(s), optionally with injected poles.
#[derive(Clone, Debug, Default)]
pub struct RatioIntegrand {
    injected: Vec<InjectedPole>,
}

impl RatioIntegrand {
    pub fn exact() -> Self {
        Self::default()
    }

    /// Adds c/(s - s0) and its mirror. Requires 1/2 < Re s0 < 1 and Im s0 > 0.
    /// A zero coefficient leaves the integrand unchanged.
    pub fn with_pole(mut self, coefficient: Complex, location: Complex) -> Result<Self> {
        let (x0, y0) = location.to_f64_pair();
        if !(x0 > 0.5 && x0 < 1.0 && y0 > 0.0) {
            return Err(Error::Domain(format!(
                "injected pole {location} must satisfy 1/2 < Re s0 < 1 and Im s0 > 0"
            )));
        }
        if !coefficient.is_finite() {
            return Err(Error::Domain(format!("coefficient {coefficient} is not finite")));
        }
        if !(coefficient.re.is_zero() && coefficient.im.is_zero()) {
            self.injected.push(InjectedPole {
                coefficient,
                location,
            });
        }
        Ok(self)
    }

    pub fn injected(&self) -> &[InjectedPole] {
        &self.injected
    }

    pub fn is_exact(&self) -> bool {
        self.injected.is_empty()
    }

    pub fn eval(&self, s: &Complex, ctx: &PrecisionContext) -> Result<EvalResult> {
        let mut r = f_ratio(s, ctx)?;
        for pole in &self.injected {
            let direct = pole.coefficient.clone() / (s.clone() - &pole.location);
            let mirror = pole.coefficient.conj() / (s.clone() - &pole.location.conj());
            r.value = r.value + &direct + &mirror;
        }
        Ok(r)
    }

    /// (Re s0, Im s0) of each injected pole, as f64.
    pub fn pole_positions(&self) -> Vec<(f64, f64)> {
        self.injected.iter().map(|p| p.location.to_f64_pair()).collect()
    }

    /// Exact integral over [t, inf) of Re of the injected terms on the line
    /// Re s = sigma. The terms decay only like 1/t^2, so they are never left to
    /// the exponential tail model.
    pub fn injected_tail(&self, sigma: &Float, t: &Float) -> Result<Float> {
        let prec = sigma.prec();
        let mut total = Float::new(prec);
        for pole in &self.injected {
            let a = Float::with_val(prec, sigma - &pole.location.re);
            if a.is_zero() {
                let (_, y0) = pole.location.to_f64_pair();
                return Err(Error::NearPoleOnContour {
                    sigma: sigma.to_f64(),
                    t: y0,
                });
            }
            let y0 = &pole.location.im;
            let at_inf = Float::with_val(prec, &pole.coefficient.re * Complex::pi(prec)) * sign(&a);
            let at_t = antiderivative(&pole.coefficient, &a, y0, t);
            total += at_inf - at_t;
        }
        Ok(total)
    }

    /// Same over (-inf, -t] plus [t, inf); by symmetry twice the one-sided tail.
    pub fn injected_tail_two_sided(&self, sigma: &Float, t: &Float) -> Result<Float> {
        Ok(self.injected_tail(sigma, t)? * 2u32)
    }
}

fn sign(a: &Float) -> i32 {
    if a.is_sign_negative() {
        -1
    } else {
        1
    }
}

/// Antiderivative in t of Re[c/(a + i(t - y0)) + conj(c)/(a + i(t + y0))]:
/// Re c [atan((t-y0)/a) + atan((t+y0)/a)] + (Im c / 2) ln[(a^2 + (t-y0)^2)/(a^2 + (t+y0)^2)]
fn antiderivative(c: &Complex, a: &Float, y0: &Float, t: &Float) -> Float {
    let prec = a.prec();
    let u = Float::with_val(prec, t - y0);
    let v = Float::with_val(prec, t + y0);
    let a2 = Float::with_val(prec, a.square_ref());
    let atan_u = Float::with_val(prec, &u / a).atan();
    let atan_v = Float::with_val(prec, &v / a).atan();
    let num = Float::with_val(prec, u.square_ref()) + &a2;
    let den = Float::with_val(prec, v.square_ref()) + &a2;
    let log_ratio = Float::with_val(prec, num / den).ln();
    Float::with_val(prec, &c.re * (atan_u + atan_v)) + Float::with_val(prec, &c.im * log_ratio) / 2u32
}

/// Contribution of one injected pair to (1/pi) * integral over [0, inf) of Re,
/// which is Re(c) sign(sigma - Re s0).
pub fn injected_contribution(c: &Complex, s0: &Complex, sigma: f64) -> f64 {
    let (x0, _) = s0.to_f64_pair();
    let (cr, _) = c.to_f64_pair();
    if sigma > x0 {
        cr
    } else if sigma < x0 {
        -cr
    } else {
        0.0
    }
}
