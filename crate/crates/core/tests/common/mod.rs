#![allow(dead_code)]

use rhxi::Complex;
use rug::ops::Pow;
use rug::{Float, Integer};

/// Values from an independent 30-digit evaluation.
pub const ZETA_HALF: &str = "-1.46035450880958681288949915252";
pub const LN_GAMMA_QUARTER: &str = "1.28802252469807745737061044022";
pub const XI_HALF: &str = "0.497120778188314109912773739685";
pub const J_CLOSED_FORM: &str = "5.61335880355538436610182854764";
pub const REFERENCE_I: &str = "1.010263505002429888131259";
pub const ZERO_ORDINATES: [&str; 13] = [
    "14.1347251417346937904572519836",
    "21.0220396387715549926284795939",
    "25.0108575801456887632137909926",
    "30.4248761258595132103118975306",
    "32.9350615877391896906623689641",
    "37.5861781588256712572177634807",
    "40.9187190121474951873981269146",
    "43.3270732809149995194961221654",
    "48.0051508811671597279424727494",
    "49.7738324776723021819167846786",
    "52.9703214777144606441472966089",
    "56.4462476970633948043677594767",
    "59.347044002602353079653648675",
];
/// |f(3/2 + iT)| for T = 10, 20, 30, 40, 60, 80.
pub const RATIO_DECAY: [(f64, f64); 6] = [
    (10.0, 3.44e-3),
    (20.0, 2.82e-6),
    (30.0, 1.69e-9),
    (40.0, 8.64e-13),
    (60.0, 2.53e-19),
    (80.0, 2.15e-26),
];

pub fn float(prec: u32, s: &str) -> Float {
    Float::with_val(prec, Float::parse(s).unwrap())
}

pub fn abs_diff(a: &Float, b: &Float) -> f64 {
    Float::with_val(a.prec().max(b.prec()), a - b).abs().to_f64()
}

/// zeta(s) = eta(s) / (1 - 2^(1-s)) with eta summed by the Borwein
/// alternating-series acceleration. Independent of Euler-Maclaurin.
/// Error about (1 + 2|t|) e^(pi |t| / 2) (3 + sqrt 8)^-n.
pub fn zeta_eta(s: &Complex, prec: u32) -> Complex {
    let n: u32 = 160;
    let work = prec + 128;
    let s = Complex::new(Float::with_val(work, &s.re), Float::with_val(work, &s.im));
    // d_k = n sum_{i<=k} (n+i-1)! 4^i / ((n-i)! (2i)!)
    let mut d = Vec::with_capacity(n as usize + 1);
    let mut acc = Integer::new();
    let fact = |m: u32| Integer::from(Integer::factorial(m));
    for i in 0..=n {
        let num = fact(n + i - 1) * Integer::from(4u32).pow(i);
        let den = fact(n - i) * fact(2 * i);
        acc += Integer::from(n) * num / den;
        d.push(acc.clone());
    }
    let dn = Float::with_val(work, &d[n as usize]);
    let mut eta = Complex::zero(work);
    for k in 0..n {
        let coeff = Float::with_val(work, &d[k as usize]) - &dn;
        let sign = if k % 2 == 0 { 1 } else { -1 };
        let term = s.clone().real_pow_neg(&Float::with_val(work, k + 1)).scale(&(coeff * sign));
        eta = eta + &term;
    }
    let eta = eta.scale(&Float::with_val(work, -1 / &dn));
    let one_minus_s = Complex::one(work) - &s;
    let two_pow = one_minus_s
        .scale(&Float::with_val(work, 2u32).ln())
        .exp();
    let denom = Complex::one(work) - &two_pow;
    let z = eta / &denom;
    Complex::new(Float::with_val(prec, &z.re), Float::with_val(prec, &z.im))
}
