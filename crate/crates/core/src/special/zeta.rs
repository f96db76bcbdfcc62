use rug::Float;

use super::gamma::ln_bernoulli_ratio;
use super::EvalResult;
use crate::complex::Complex;
use crate::error::{Error, Result};
use crate::precision::PrecisionContext;

/// Riemann zeta by Euler-Maclaurin summation.
pub fn zeta(s: &Complex, ctx: &PrecisionContext) -> Result<EvalResult> {
    let s_minus_one = s.add_f64(-1.0);
    let pole_radius = 2f64.powf(-(ctx.precision_bits() as f64) / 2.0);
    if s_minus_one.hypot_f64() < pole_radius {
        return Err(Error::Pole {
            function: "zeta",
            at: s.to_string(),
        });
    }
    let fused = FusedZeta::eval(s, ctx)?;
    let value = (fused.value / &s_minus_one).check_finite("zeta")?;
    Ok(EvalResult::new(value, fused.zeta_err, ctx.target_tol()))
}

/// (s - 1) zeta(s), finite at s = 1 where it equals 1.
pub fn zeta_times_s_minus_one(s: &Complex, ctx: &PrecisionContext) -> Result<EvalResult> {
    let fused = FusedZeta::eval(s, ctx)?;
    Ok(EvalResult::new(fused.value, fused.err, ctx.target_tol()))
}

pub(crate) struct FusedZeta {
    /// (s - 1) zeta(s)
    pub value: Complex,
    /// absolute error of `value`
    pub err: f64,
    /// absolute error of zeta(s) itself
    pub zeta_err: f64,
}

impl FusedZeta {
    /// Euler-Maclaurin with the pole term N^(1-s)/(s-1) multiplied through:
    ///
    /// (s-1) zeta(s) = (s-1) [ sum_{n<N} n^-s + N^-s/2
    ///                 + sum_{k<=M} B_2k/(2k)! (s)_(2k-1) N^(-s-2k+1) ] + N^(1-s)
    pub fn eval(s: &Complex, ctx: &PrecisionContext) -> Result<Self> {
        let prec = ctx.precision_bits();
        let (sigma, t) = s.to_f64_pair();
        let plan = plan_euler_maclaurin(sigma, t, ctx.series_tol())
            .ok_or_else(|| Error::Precision {
                tol: ctx.series_tol(),
                bits: prec,
                detail: format!("Euler-Maclaurin cannot reach the tolerance at s = {s}"),
            })?;
        let n_cut = plan.n;

        let powers = neg_powers(s, n_cut, prec);
        let mut head = Complex::zero(prec);
        for p in &powers[1..n_cut] {
            head = head + p;
        }

        let ratios = ctx.bernoulli_ratios(plan.m.max(1));
        let n_float = Float::with_val(prec, n_cut);
        let n_sq = Float::with_val(prec, &n_float * &n_float);
        let n_sq_inv = Float::with_val(prec, 1) / &n_sq;
        let mut rising = s.scale(&(Float::with_val(prec, 1) / &n_float));
        let mut corr = Complex::from_f64(prec, 0.5, 0.0);
        for (k, ratio) in ratios.iter().enumerate().take(plan.m) {
            let k = k + 1;
            corr = corr + &rising.scale(ratio);
            let a = s.add_f64((2 * k - 1) as f64);
            let b = s.add_f64((2 * k) as f64);
            rising = (rising * &a * &b).scale(&n_sq_inv);
        }
        let n_pow = &powers[n_cut];
        let sum = head + &(n_pow.clone() * &corr);
        let s_minus_one = s.add_f64(-1.0);
        let value = (s_minus_one.clone() * &sum + &n_pow.scale(&n_float)).check_finite("zeta")?;

        let rounding = 8.0
            * ctx.unit_roundoff()
            * (plan.abs_sum + (plan.m + 2) as f64 * n_pow.hypot_f64().max(1e-300))
            * (1.0 + (n_cut as f64).log2());
        let zeta_err = plan.remainder + rounding;
        let err = s_minus_one.hypot_f64() * zeta_err + rounding * (n_cut as f64).powf(1.0 - sigma);
        Ok(Self {
            value,
            err,
            zeta_err,
        })
    }
}

/// n^-s for n = 0..=n_max (index 0 unused). Prime powers use exp/sin/cos,
/// composites are products of already computed factors.
fn neg_powers(s: &Complex, n_max: usize, prec: u32) -> Vec<Complex> {
    let mut smallest_factor = vec![0usize; n_max + 1];
    for p in 2..=n_max {
        if smallest_factor[p] == 0 {
            let mut q = p;
            while q <= n_max {
                if smallest_factor[q] == 0 {
                    smallest_factor[q] = p;
                }
                q += p;
            }
        }
    }
    let mut out: Vec<Complex> = Vec::with_capacity(n_max + 1);
    out.push(Complex::zero(prec));
    if n_max >= 1 {
        out.push(Complex::one(prec));
    }
    for n in 2..=n_max {
        let p = smallest_factor[n];
        let v = if p == n {
            let ln_p = Float::with_val(prec, n).ln();
            s.exp_neg_times(&ln_p)
        } else {
            out[p].clone() * &out[n / p]
        };
        out.push(v);
    }
    out
}

struct EulerMaclaurinPlan {
    n: usize,
    m: usize,
    remainder: f64,
    /// sum_{n < N} |n^-s|, for the rounding estimate
    abs_sum: f64,
}

const MAX_CORRECTION_TERMS: usize = 400;

/// Chooses (N, M) at minimal cost with the remainder bound
/// |R| <= |T_{M+1}| |s+2M+1| / (sigma+2M+1) below tau times the size of the sum.
fn plan_euler_maclaurin(sigma: f64, t: f64, tau: f64) -> Option<EulerMaclaurinPlan> {
    let abs_s = sigma.hypot(t);
    // prefix[m] = sum_{j<m} ln |s + j|
    let mut prefix = vec![0.0f64];
    let extend = |prefix: &mut Vec<f64>, upto: usize| {
        while prefix.len() <= upto {
            let j = (prefix.len() - 1) as f64;
            let last = *prefix.last().unwrap();
            prefix.push(last + (sigma + j).hypot(t).ln());
        }
    };
    let n_hi = (4.0 * (abs_s / (2.0 * std::f64::consts::PI) + (1.0 / tau).ln()) + 20.0) as usize;
    let mut best: Option<(f64, EulerMaclaurinPlan)> = None;
    let mut n = 2usize;
    while n <= n_hi {
        let ln_n = (n as f64).ln();
        let scale = ((1.0 - sigma) * ln_n - (sigma - 1.0).hypot(t).max(1.0).ln())
            .exp()
            .max(1.0);
        let ln_target = (tau * scale).ln();
        for m in 0..MAX_CORRECTION_TERMS {
            let k = m + 1;
            let width = sigma + (2 * m + 1) as f64;
            if width <= 0.0 {
                continue;
            }
            extend(&mut prefix, 2 * k);
            let ln_term = ln_bernoulli_ratio(k) + prefix[2 * k - 1] - (sigma + (2 * k - 1) as f64) * ln_n;
            let ln_bound = ln_term + (sigma + (2 * m + 1) as f64).hypot(t).ln() - width.ln();
            if ln_bound <= ln_target {
                let cost = n as f64 + 0.25 * m as f64;
                if best.as_ref().map_or(true, |(c, _)| cost < *c) {
                    let abs_sum = (1..n).map(|j| (j as f64).powf(-sigma)).sum::<f64>();
                    best = Some((
                        cost,
                        EulerMaclaurinPlan {
                            n,
                            m,
                            remainder: ln_bound.exp(),
                            abs_sum,
                        },
                    ));
                }
                break;
            }
            // terms have started to grow again for this N
            if ln_term > 0.0 && m > 4 && (sigma + (2 * k) as f64).hypot(t) > 2.0 * std::f64::consts::PI * n as f64 {
                break;
            }
        }
        if let Some((c, _)) = &best {
            if (n as f64) > *c {
                break;
            }
        }
        n = (n + 1).max((n as f64 * 1.15) as usize);
    }
    best.map(|(_, p)| p)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> PrecisionContext {
        PrecisionContext::new(256, 1e-30).unwrap()
    }

    #[test]
    fn zeta_two_is_pi_squared_over_six() {
        let ctx = ctx();
        let z = zeta(&Complex::from_f64(256, 2.0, 0.0), &ctx).unwrap();
        let want = Float::with_val(256, ctx.pi().square_ref()) / 6u32;
        assert!((z.value.re - want).abs().to_f64() < 1e-30);
        assert!(z.value.im.to_f64().abs() < 1e-40);
    }

    #[test]
    fn zeta_zero_is_minus_half() {
        let z = zeta(&Complex::from_f64(256, 0.0, 0.0), &ctx()).unwrap();
        assert!((z.value.re.to_f64() + 0.5).abs() < 1e-30);
    }

    #[test]
    fn zeta_negative_integers() {
        // zeta(-1) = -1/12, zeta(-2) = 0, zeta(-3) = 1/120
        let ctx = ctx();
        for (s, want) in [(-1.0, -1.0 / 12.0), (-2.0, 0.0), (-3.0, 1.0 / 120.0)] {
            let z = zeta(&Complex::from_f64(256, s, 0.0), &ctx).unwrap();
            assert!((z.value.re.to_f64() - want).abs() < 1e-15, "zeta({s})");
        }
    }

    #[test]
    fn pole_at_one() {
        let e = zeta(&Complex::from_f64(256, 1.0, 0.0), &ctx());
        assert!(matches!(e, Err(Error::Pole { .. })));
        let fused = zeta_times_s_minus_one(&Complex::from_f64(256, 1.0, 0.0), &ctx()).unwrap();
        assert!((fused.value.re.to_f64() - 1.0).abs() < 1e-30);
    }

    #[test]
    fn matches_mpfr_real_zeta() {
        let ctx = ctx();
        for s in [0.5, 1.5, 3.25, -0.75] {
            let z = zeta(&Complex::from_f64(256, s, 0.0), &ctx).unwrap();
            let want = Float::with_val(256, s).zeta();
            assert!((z.value.re - want).abs().to_f64() < 1e-28, "zeta({s})");
        }
    }

    #[test]
    fn fused_value_is_smooth_near_one() {
        // (s-1) zeta(s) = 1 + gamma_E (s-1) + O((s-1)^2)
        let ctx = ctx();
        let h = 1e-20;
        let s = Complex::from_real(Float::with_val(256, h) + 1u32);
        let z = zeta_times_s_minus_one(&s, &ctx).unwrap();
        let euler_gamma = 0.577_215_664_901_532_9;
        let excess = (z.value.re - 1u32).to_f64();
        assert!((excess - euler_gamma * h).abs() < 1e-30, "{excess:e} {:e}", z.err_bound);
    }

    #[test]
    fn plan_grows_with_height() {
        let low = plan_euler_maclaurin(0.5, 10.0, 1e-15).unwrap();
        let high = plan_euler_maclaurin(0.5, 200.0, 1e-15).unwrap();
        assert!(high.n > low.n);
        assert!(low.remainder <= 1e-15 * 10.0);
    }
}
