//! Working-precision configuration shared by every evaluation.

use std::fmt;
use std::sync::{Arc, RwLock};

use rug::{Float, Rational};

use crate::error::{Error, Result};

pub const DEFAULT_PRECISION_BITS: u32 = 256;
pub const DEFAULT_GUARD_BITS: u32 = 64;
pub const MIN_PRECISION_BITS: u32 = 64;
pub const MIN_GUARD_BITS: u32 = 32;

/// Smallest |zeta(s)| accepted for a divisor before `f_ratio` reports proximity
/// to a zero. Contours keep at least 0.01 away from the critical line, where
/// |zeta| stays above roughly 1e-3 for ordinates below 200.
pub const POLE_PROXIMITY_FLOOR: f64 = 1e-4;

/// Precision, tolerance and guard bits governing an evaluation.
///
/// Cloning is cheap; clones share a lazily grown table of Bernoulli
/// coefficients at the context's precision.
#[derive(Clone)]
pub struct PrecisionContext {
    precision_bits: u32,
    target_tol: f64,
    guard_bits: u32,
    tables: Arc<Tables>,
}

impl PrecisionContext {
    pub fn new(precision_bits: u32, target_tol: f64) -> Result<Self> {
        Self::with_guard(precision_bits, target_tol, DEFAULT_GUARD_BITS)
    }

    pub fn with_guard(precision_bits: u32, target_tol: f64, guard_bits: u32) -> Result<Self> {
        if precision_bits < MIN_PRECISION_BITS {
            return Err(Error::InvalidPrecision(format!(
                "precision_bits = {precision_bits} is below the minimum {MIN_PRECISION_BITS}"
            )));
        }
        if guard_bits < MIN_GUARD_BITS {
            return Err(Error::InvalidPrecision(format!(
                "guard_bits = {guard_bits} is below the minimum {MIN_GUARD_BITS}"
            )));
        }
        if !(target_tol.is_finite() && target_tol > 0.0) {
            return Err(Error::InvalidPrecision(format!(
                "target_tol = {target_tol} must be positive and finite"
            )));
        }
        let floor = achievable_floor(precision_bits, guard_bits);
        if target_tol < floor {
            return Err(Error::InvalidPrecision(format!(
                "target_tol = {target_tol:e} is below 2^-(precision_bits - guard_bits) = {floor:e}"
            )));
        }
        Ok(Self {
            precision_bits,
            target_tol,
            guard_bits,
            tables: Arc::new(Tables::default()),
        })
    }

    /// Context whose precision is the bits needed for `target_tol` plus the guard.
    pub fn for_tolerance(target_tol: f64) -> Result<Self> {
        let digits_bits = if target_tol > 0.0 && target_tol < 1.0 {
            (-target_tol.log2()).ceil() as u32
        } else {
            0
        };
        let bits = (digits_bits + DEFAULT_GUARD_BITS).max(MIN_PRECISION_BITS + DEFAULT_GUARD_BITS);
        Self::new(bits, target_tol)
    }

    pub fn precision_bits(&self) -> u32 {
        self.precision_bits
    }

    pub fn target_tol(&self) -> f64 {
        self.target_tol
    }

    pub fn guard_bits(&self) -> u32 {
        self.guard_bits
    }

    /// Same precision with a different tolerance. Shares the coefficient cache.
    pub fn with_target_tol(&self, target_tol: f64) -> Result<Self> {
        let mut next = Self::with_guard(self.precision_bits, target_tol, self.guard_bits)?;
        next.tables = Arc::clone(&self.tables);
        Ok(next)
    }

    /// Smallest tolerance this precision and guard can honour.
    pub fn tolerance_floor(&self) -> f64 {
        achievable_floor(self.precision_bits, self.guard_bits)
    }

    /// Same precision, tolerance `tol` clamped to the achievable floor.
    pub fn tightened(&self, tol: f64) -> Self {
        self.with_target_tol(tol.max(self.tolerance_floor()))
            .expect("clamped tolerance is valid")
    }

    /// Relative accuracy requested from series truncations (zeta, log-gamma).
    pub(crate) fn series_tol(&self) -> f64 {
        (self.target_tol * 2f64.powi(-8)).max(self.unit_roundoff())
    }

    /// 2^(1 - precision_bits)
    pub fn unit_roundoff(&self) -> f64 {
        2f64.powi(1 - self.precision_bits as i32)
    }

    /// |zeta(s)| below which a divisor xi(s) is treated as vanishing.
    pub fn pole_threshold(&self) -> f64 {
        2f64.powf(-(self.precision_bits as f64) / 2.0).max(POLE_PROXIMITY_FLOOR)
    }

    pub fn float(&self, v: f64) -> Float {
        Float::with_val(self.precision_bits, v)
    }

    pub fn pi(&self) -> Float {
        Float::with_val(self.precision_bits, rug::float::Constant::Pi)
    }

    /// B_{2k} / (2k)! for k = 1..=count, at the context precision.
    pub(crate) fn bernoulli_ratios(&self, count: usize) -> Vec<Float> {
        {
            let cached = self.tables.bernoulli.read().expect("bernoulli cache poisoned");
            if cached.len() >= count {
                return cached[..count].to_vec();
            }
        }
        let mut cached = self.tables.bernoulli.write().expect("bernoulli cache poisoned");
        if cached.len() < count {
            let want = count.next_power_of_two().max(16);
            *cached = bernoulli_ratio_table(want, self.precision_bits);
        }
        cached[..count].to_vec()
    }
}

impl fmt::Debug for PrecisionContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PrecisionContext")
            .field("precision_bits", &self.precision_bits)
            .field("target_tol", &self.target_tol)
            .field("guard_bits", &self.guard_bits)
            .finish()
    }
}

impl PartialEq for PrecisionContext {
    fn eq(&self, other: &Self) -> bool {
        self.precision_bits == other.precision_bits
            && self.target_tol == other.target_tol
            && self.guard_bits == other.guard_bits
    }
}

impl Default for PrecisionContext {
    fn default() -> Self {
        Self::new(DEFAULT_PRECISION_BITS, 1e-12).expect("default context is valid")
    }
}

fn achievable_floor(precision_bits: u32, guard_bits: u32) -> f64 {
    2f64.powi(-(precision_bits as i32) + guard_bits as i32)
}

#[derive(Default)]
struct Tables {
    bernoulli: RwLock<Vec<Float>>,
}

/// Exact Bernoulli numbers by the classical recurrence, converted to
/// B_{2k}/(2k)! for k = 1..=count.
fn bernoulli_ratio_table(count: usize, prec: u32) -> Vec<Float> {
    let top = 2 * count;
    let mut b: Vec<Rational> = Vec::with_capacity(top + 1);
    b.push(Rational::from(1));
    // binomial row C(m+1, k), updated in place
    for m in 1..=top {
        if m > 1 && m % 2 == 1 {
            b.push(Rational::new());
            continue;
        }
        let mut acc = Rational::new();
        let mut binom = rug::Integer::from(1);
        for (k, bk) in b.iter().enumerate() {
            if bk.cmp0() != std::cmp::Ordering::Equal {
                acc += Rational::from(&binom * bk.numer()) / bk.denom();
            }
            binom *= (m + 1 - k) as u32;
            binom /= (k + 1) as u32;
        }
        acc /= (m + 1) as u32;
        b.push(-acc);
    }
    let mut out = Vec::with_capacity(count);
    let mut factorial = rug::Integer::from(1);
    for n in 1..=top {
        factorial *= n as u32;
        if n % 2 == 0 {
            let r = b[n].clone() / Rational::from(&factorial);
            out.push(Float::with_val(prec, &r));
        }
    }
    out
}
