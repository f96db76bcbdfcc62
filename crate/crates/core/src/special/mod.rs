//! Multiprecision log-gamma, zeta, the completed xi function and the ratio
//! f(s) = xi(2s)/xi(s).
//!
//! Error bounds are first-order propagated estimates built from series
//! remainder bounds plus a rounding term; they are not interval enclosures.

mod gamma;
mod xi;
mod zeta;

pub use gamma::{gamma, log_gamma};
pub use xi::{f_ratio, xi, xi_envelope, xi_symmetry_residual};
pub use zeta::{zeta, zeta_times_s_minus_one};

use std::fmt;

use crate::complex::Complex;

/// Diagnostic flags attached to an [`EvalResult`].
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct EvalFlags(u8);

impl EvalFlags {
    pub const NONE: EvalFlags = EvalFlags(0);
    pub const NEAR_POLE: EvalFlags = EvalFlags(1);
    pub const CANCELLATION: EvalFlags = EvalFlags(2);

    pub fn contains(self, other: EvalFlags) -> bool {
        self.0 & other.0 == other.0
    }

    pub fn insert(&mut self, other: EvalFlags) {
        self.0 |= other.0;
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }
}

impl std::ops::BitOr for EvalFlags {
    type Output = EvalFlags;
    fn bitor(self, rhs: EvalFlags) -> EvalFlags {
        EvalFlags(self.0 | rhs.0)
    }
}

impl fmt::Debug for EvalFlags {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut names = Vec::new();
        if self.contains(Self::NEAR_POLE) {
            names.push("NEAR_POLE");
        }
        if self.contains(Self::CANCELLATION) {
            names.push("CANCELLATION");
        }
        write!(f, "{{{}}}", names.join(", "))
    }
}

/// A value together with an absolute error estimate.
#[derive(Clone, Debug)]
pub struct EvalResult {
    pub value: Complex,
    pub err_bound: f64,
    pub flags: EvalFlags,
}

impl EvalResult {
    pub(crate) fn new(value: Complex, err_bound: f64, tol: f64) -> Self {
        let mut flags = EvalFlags::NONE;
        if err_bound > tol {
            flags.insert(EvalFlags::CANCELLATION);
        }
        Self {
            value,
            err_bound,
            flags,
        }
    }
}
