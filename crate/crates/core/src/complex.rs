//! Multiprecision complex numbers on top of MPFR reals.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use rug::float::Constant;
use rug::ops::Pow;
use rug::Float;

use crate::error::{Error, Result};

/// A complex number with both parts stored at a fixed binary precision.
///
/// Values produced by the public API are always finite; NaN and infinities
/// are turned into errors before they reach a caller.
#[derive(Clone, PartialEq)]
pub struct Complex {
    pub re: Float,
    pub im: Float,
}

pub type ComplexValue = Complex;

impl Complex {
    pub fn new(re: Float, im: Float) -> Self {
        Self { re, im }
    }

    pub fn from_f64(prec: u32, re: f64, im: f64) -> Self {
        Self {
            re: Float::with_val(prec, re),
            im: Float::with_val(prec, im),
        }
    }

    pub fn from_real(re: Float) -> Self {
        let im = Float::new(re.prec());
        Self { re, im }
    }

    pub fn zero(prec: u32) -> Self {
        Self::from_f64(prec, 0.0, 0.0)
    }

    pub fn one(prec: u32) -> Self {
        Self::from_f64(prec, 1.0, 0.0)
    }

    pub fn prec(&self) -> u32 {
        self.re.prec()
    }

    pub fn is_finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }

    pub fn check_finite(self, what: &str) -> Result<Self> {
        if self.is_finite() {
            Ok(self)
        } else {
            Err(Error::NonFinite(format!("{what} evaluated to {self}")))
        }
    }

    pub fn conj(&self) -> Self {
        Self {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    pub fn norm_sqr(&self) -> Float {
        let a = Float::with_val(self.prec(), self.re.square_ref());
        a + Float::with_val(self.prec(), self.im.square_ref())
    }

    pub fn abs(&self) -> Float {
        Float::with_val(self.prec(), self.re.hypot_ref(&self.im))
    }

    pub fn abs_f64(&self) -> f64 {
        self.abs().to_f64()
    }

    pub fn arg(&self) -> Float {
        Float::with_val(self.prec(), self.im.atan2_ref(&self.re))
    }

    pub fn scale(&self, k: &Float) -> Self {
        Self {
            re: Float::with_val(self.prec(), &self.re * k),
            im: Float::with_val(self.prec(), &self.im * k),
        }
    }

    pub fn scale_f64(&self, k: f64) -> Self {
        Self {
            re: self.re.clone() * k,
            im: self.im.clone() * k,
        }
    }

    pub fn add_real(&self, k: &Float) -> Self {
        Self {
            re: Float::with_val(self.prec(), &self.re + k),
            im: self.im.clone(),
        }
    }

    pub fn add_f64(&self, k: f64) -> Self {
        Self {
            re: self.re.clone() + k,
            im: self.im.clone(),
        }
    }

    pub fn mul_i(&self) -> Self {
        Self {
            re: -self.im.clone(),
            im: self.re.clone(),
        }
    }

    pub fn recip(&self) -> Self {
        let n = self.norm_sqr();
        Self {
            re: Float::with_val(self.prec(), &self.re / &n),
            im: -Float::with_val(self.prec(), &self.im / &n),
        }
    }

    pub fn exp(&self) -> Self {
        let p = self.prec();
        let m = Float::with_val(p, self.re.exp_ref());
        let (s, c) = self.im.clone().sin_cos(Float::new(p));
        Self {
            re: Float::with_val(p, &m * &c),
            im: m * s,
        }
    }

    /// Principal logarithm, argument in (-pi, pi].
    pub fn ln(&self) -> Self {
        let p = self.prec();
        Self {
            re: Float::with_val(p, self.abs().ln_ref()),
            im: self.arg(),
        }
    }

    /// exp(-s ln x) for a real positive x given through its logarithm.
    pub fn exp_neg_times(&self, ln_x: &Float) -> Self {
        let p = self.prec();
        let m = Float::with_val(p, &self.re * ln_x);
        let m = (-m).exp();
        let phase = -Float::with_val(p, &self.im * ln_x);
        let (s, c) = phase.sin_cos(Float::new(p));
        Self {
            re: Float::with_val(p, &m * &c),
            im: m * s,
        }
    }

    /// x^{-self} for a real positive x.
    pub fn real_pow_neg(&self, x: &Float) -> Self {
        let ln_x = Float::with_val(self.prec(), x.ln_ref());
        self.exp_neg_times(&ln_x)
    }

    pub fn sqr(&self) -> Self {
        self.clone() * self
    }

    pub fn powi(&self, n: u32) -> Self {
        let mut acc = Complex::one(self.prec());
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * &base;
            }
            base = base.sqr();
            e >>= 1;
        }
        acc
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }

    pub fn pi(prec: u32) -> Float {
        Float::with_val(prec, Constant::Pi)
    }

    /// |self|^2 as f64, cheap magnitude used for planning.
    pub fn hypot_f64(&self) -> f64 {
        let (a, b) = self.to_f64_pair();
        a.hypot(b)
    }

    pub fn pow_real(&self, e: &Float) -> Self {
        let p = self.prec();
        let r = Float::with_val(p, self.abs().pow(e));
        let theta = Float::with_val(p, self.arg() * e);
        let (s, c) = theta.sin_cos(Float::new(p));
        Self {
            re: Float::with_val(p, &r * &c),
            im: r * s,
        }
    }
}

impl fmt::Display for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (re, im) = self.to_f64_pair();
        let re = if re == 0.0 { 0.0 } else { re };
        if im.is_sign_negative() {
            write!(f, "{re}-{}i", -im)
        } else {
            write!(f, "{re}+{im}i")
        }
    }
}

impl fmt::Debug for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:.20} {:+.20}i)", self.re.to_f64(), self.im.to_f64())
    }
}

impl Add<&Complex> for Complex {
    type Output = Complex;
    fn add(mut self, rhs: &Complex) -> Complex {
        self.re += &rhs.re;
        self.im += &rhs.im;
        self
    }
}

impl Add for Complex {
    type Output = Complex;
    fn add(self, rhs: Complex) -> Complex {
        self + &rhs
    }
}

impl Sub<&Complex> for Complex {
    type Output = Complex;
    fn sub(mut self, rhs: &Complex) -> Complex {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
        self
    }
}

impl Sub for Complex {
    type Output = Complex;
    fn sub(self, rhs: Complex) -> Complex {
        self - &rhs
    }
}

impl Mul<&Complex> for Complex {
    type Output = Complex;
    fn mul(self, rhs: &Complex) -> Complex {
        let p = self.prec();
        let ac = Float::with_val(p, &self.re * &rhs.re);
        let bd = Float::with_val(p, &self.im * &rhs.im);
        let ad = Float::with_val(p, &self.re * &rhs.im);
        let bc = Float::with_val(p, &self.im * &rhs.re);
        Complex {
            re: ac - bd,
            im: ad + bc,
        }
    }
}

impl Mul for Complex {
    type Output = Complex;
    fn mul(self, rhs: Complex) -> Complex {
        self * &rhs
    }
}

impl Div<&Complex> for Complex {
    type Output = Complex;
    fn div(self, rhs: &Complex) -> Complex {
        self * &rhs.recip()
    }
}

impl Div for Complex {
    type Output = Complex;
    fn div(self, rhs: Complex) -> Complex {
        self / &rhs
    }
}

impl Neg for Complex {
    type Output = Complex;
    fn neg(self) -> Complex {
        Complex {
            re: -self.re,
            im: -self.im,
        }
    }
}
