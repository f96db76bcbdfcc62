//! Globally adaptive Gauss-Kronrod integration over an interval.

use rayon::prelude::*;
use rug::Float;

use super::rule::GaussKronrod;
use crate::complex::Complex;
use crate::error::{Error, Result};

/// Values the adaptive engine can integrate.
pub trait QuadValue: Clone + Send + Sync {
    fn zero(prec: u32) -> Self;
    fn add_scaled(&mut self, v: &Self, w: &Float);
    fn add_assign(&mut self, other: &Self);
    fn abs_diff(&self, other: &Self) -> f64;
}

impl QuadValue for Float {
    fn zero(prec: u32) -> Self {
        Float::new(prec)
    }
    fn add_scaled(&mut self, v: &Self, w: &Float) {
        *self += Float::with_val(self.prec(), v * w);
    }
    fn add_assign(&mut self, other: &Self) {
        *self += other;
    }
    fn abs_diff(&self, other: &Self) -> f64 {
        Float::with_val(self.prec(), self - other).abs().to_f64()
    }
}

impl QuadValue for Complex {
    fn zero(prec: u32) -> Self {
        Complex::zero(prec)
    }
    fn add_scaled(&mut self, v: &Self, w: &Float) {
        self.re += Float::with_val(self.re.prec(), &v.re * w);
        self.im += Float::with_val(self.im.prec(), &v.im * w);
    }
    fn add_assign(&mut self, other: &Self) {
        self.re += &other.re;
        self.im += &other.im;
    }
    fn abs_diff(&self, other: &Self) -> f64 {
        (self.clone() - other).hypot_f64()
    }
}

/// An integrand sample with its absolute evaluation error.
#[derive(Clone, Debug)]
pub struct Sample<V> {
    pub value: V,
    pub err: f64,
}

impl<V> Sample<V> {
    pub fn exact(value: V) -> Self {
        Self { value, err: 0.0 }
    }
}

#[derive(Clone, Debug)]
struct Panel<V> {
    a: Float,
    b: Float,
    value: V,
    err: f64,
}

/// Result of [`integrate_adaptive`].
#[derive(Clone, Debug)]
pub struct AdaptiveOutcome<V> {
    pub value: V,
    /// sum over panels of |K - G| plus propagated evaluation error
    pub err: f64,
    pub panels: usize,
}

/// Integrates `f` over [breakpoints[0], breakpoints[last]], starting from the
/// panels between consecutive breakpoints and bisecting the panel with the
/// largest error estimate until the total falls below `tol`.
///
/// Node evaluations inside a step run in parallel; panel values are summed in
/// ascending order of their left endpoint, so results do not depend on thread
/// scheduling.
pub fn integrate_adaptive<V, F>(
    f: &F,
    breakpoints: &[Float],
    tol: f64,
    max_panels: usize,
    rule: &GaussKronrod,
) -> Result<AdaptiveOutcome<V>>
where
    V: QuadValue,
    F: Fn(&Float) -> Result<Sample<V>> + Sync,
{
    if breakpoints.len() < 2 {
        return Err(Error::InvalidContour("need at least two breakpoints".into()));
    }
    if breakpoints.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidContour("breakpoints must be strictly increasing".into()));
    }
    let mut panels: Vec<Panel<V>> = breakpoints
        .windows(2)
        .collect::<Vec<_>>()
        .par_iter()
        .map(|w| eval_panel(f, &w[0], &w[1], rule))
        .collect::<Result<Vec<_>>>()?;

    loop {
        let total: f64 = panels.iter().map(|p| p.err).sum();
        if total <= tol {
            break;
        }
        if panels.len() >= max_panels {
            return Err(Error::MaxPanelsExceeded {
                max_panels,
                estimate: total,
                tol,
            });
        }
        // largest error, earliest index on ties
        let worst = panels
            .iter()
            .enumerate()
            .fold(0usize, |best, (i, p)| if p.err > panels[best].err { i } else { best });
        let panel = panels.swap_remove(worst);
        let mid = Float::with_val(rule.prec(), &panel.a + &panel.b) / 2u32;
        if mid <= panel.a || mid >= panel.b {
            return Err(Error::MaxPanelsExceeded {
                max_panels,
                estimate: total,
                tol,
            });
        }
        let (left, right) = rayon::join(
            || eval_panel(f, &panel.a, &mid, rule),
            || eval_panel(f, &mid, &panel.b, rule),
        );
        panels.push(left?);
        panels.push(right?);
    }

    panels.sort_by(|x, y| x.a.partial_cmp(&y.a).expect("finite endpoints"));
    let mut value = V::zero(rule.prec());
    let mut err = 0.0;
    for p in &panels {
        value.add_assign(&p.value);
        err += p.err;
    }
    Ok(AdaptiveOutcome {
        value,
        err,
        panels: panels.len(),
    })
}

fn eval_panel<V, F>(f: &F, a: &Float, b: &Float, rule: &GaussKronrod) -> Result<Panel<V>>
where
    V: QuadValue,
    F: Fn(&Float) -> Result<Sample<V>> + Sync,
{
    let prec = rule.prec();
    let half = Float::with_val(prec, b - a) / 2u32;
    let center = Float::with_val(prec, a + b) / 2u32;
    let samples: Vec<Sample<V>> = rule
        .nodes()
        .par_iter()
        .map(|x| {
            let t = Float::with_val(prec, &center + Float::with_val(prec, &half * x));
            f(&t)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut kronrod = V::zero(prec);
    let mut gauss = V::zero(prec);
    let mut eval_err = 0.0;
    for ((s, wk), wg) in samples.iter().zip(rule.kronrod_weights()).zip(rule.gauss_weights()) {
        kronrod.add_scaled(&s.value, wk);
        if !wg.is_zero() {
            gauss.add_scaled(&s.value, wg);
        }
        eval_err += s.err * wk.to_f64();
    }
    let scale = Float::with_val(prec, &half);
    let mut k_scaled = V::zero(prec);
    k_scaled.add_scaled(&kronrod, &scale);
    let mut g_scaled = V::zero(prec);
    g_scaled.add_scaled(&gauss, &scale);
    let h = half.to_f64();
    let err = k_scaled.abs_diff(&g_scaled) + h * eval_err;
    if !err.is_finite() {
        return Err(Error::NonFinite(format!("panel [{a}, {b}] error estimate")));
    }
    Ok(Panel {
        a: a.clone(),
        b: b.clone(),
        value: k_scaled,
        err,
    })
}
