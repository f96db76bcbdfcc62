mod common;

use common::*;
use proptest::prelude::*;
use rhxi::special::{f_ratio, gamma, log_gamma, xi, xi_symmetry_residual, zeta};
use rhxi::{Complex, Error, PrecisionContext};
use rug::Float;

const P: u32 = 256;

fn ctx() -> PrecisionContext {
    PrecisionContext::new(P, 1e-20).unwrap()
}

fn c(re: f64, im: f64) -> Complex {
    Complex::from_f64(P, re, im)
}

#[test]
fn frozen_values() {
    let ctx = ctx();
    let z = zeta(&c(0.5, 0.0), &ctx).unwrap();
    assert!(abs_diff(&z.value.re, &float(P, ZETA_HALF)) < 1e-20);
    let g = log_gamma(&c(0.25, 0.0), &ctx).unwrap();
    assert!(abs_diff(&g.value.re, &float(P, LN_GAMMA_QUARTER)) < 1e-20);
    let x = xi(&c(0.5, 0.0), &ctx).unwrap();
    assert!(abs_diff(&x.value.re, &float(P, XI_HALF)) < 1e-20);
}

#[test]
fn log_gamma_at_half() {
    let ctx = ctx();
    let g = log_gamma(&c(0.5, 0.0), &ctx).unwrap();
    let want = Float::with_val(P, rug::float::Constant::Pi).ln() / 2u32;
    assert!(abs_diff(&g.value.re, &want) <= g.err_bound.max(1e-25));
}

#[test]
fn f_ratio_conjugate_symmetry() {
    let ctx = ctx();
    let a = f_ratio(&c(0.75, 5.0), &ctx).unwrap();
    let b = f_ratio(&c(0.75, -5.0), &ctx).unwrap();
    assert!((a.value.conj() - &b.value).hypot_f64() <= 2.0 * (a.err_bound + b.err_bound));
}

#[test]
fn divisor_check_on_each_zero() {
    let ctx = PrecisionContext::new(P, 1e-12).unwrap();
    for g in ZERO_ORDINATES {
        let rho = Complex::new(ctx.float(0.5), float(P, g));
        assert!(
            matches!(f_ratio(&rho, &ctx), Err(Error::NearZeroDivisor { .. })),
            "no divisor error at {g}"
        );
    }
}

#[test]
fn symmetry_residual_examples() {
    let ctx = ctx();
    for s in [c(0.3, 2.0), c(0.5, 7.0), c(-1.0, 0.5)] {
        let a = xi(&s, &ctx).unwrap();
        let b = xi(&(Complex::one(P) - &s), &ctx).unwrap();
        let r = xi_symmetry_residual(&s, &ctx).unwrap();
        assert!(r <= 10.0 * (a.err_bound + b.err_bound).max(1e-60), "{s}: {r:e}");
    }
}

#[test]
fn xi_real_on_critical_line() {
    let ctx = PrecisionContext::new(P, 1e-12).unwrap();
    for t in [3.0, 14.0, 33.3, 77.7, 150.0] {
        let r = xi(&c(0.5, t), &ctx).unwrap();
        assert!(r.value.im.to_f64().abs() <= r.err_bound, "t = {t}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn functional_equation(re in -3.0f64..3.0, im in -30.0f64..30.0) {
        let ctx = PrecisionContext::new(P, 1e-15).unwrap();
        let s = c(re, im);
        let a = xi(&s, &ctx).unwrap();
        let b = xi(&(Complex::one(P) - &s), &ctx).unwrap();
        let r = xi_symmetry_residual(&s, &ctx).unwrap();
        prop_assert!(r <= 10.0 * (a.err_bound + b.err_bound), "{} vs {}", r, a.err_bound + b.err_bound);
    }

    #[test]
    fn conjugate_reflection(re in -3.0f64..3.0, im in -30.0f64..30.0) {
        let ctx = PrecisionContext::new(P, 1e-15).unwrap();
        let a = xi(&c(re, im), &ctx).unwrap();
        let b = xi(&c(re, -im), &ctx).unwrap();
        prop_assert!((a.value.conj() - &b.value).hypot_f64() <= 2.0 * a.err_bound.max(b.err_bound));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn gamma_recurrence(re in 0.1f64..8.0, im in -20.0f64..20.0) {
        let ctx = PrecisionContext::new(P, 1e-20).unwrap();
        let z = c(re, im);
        let g0 = gamma(&z, &ctx).unwrap();
        let g1 = gamma(&z.add_f64(1.0), &ctx).unwrap();
        let rel = (g1.value.clone() - &(z * &g0.value)).hypot_f64() / g1.value.hypot_f64();
        prop_assert!(rel <= 10.0 * 1e-20, "{:e}", rel);
    }

    #[test]
    fn zeta_matches_alternating_series(re in 0.05f64..1.95, im in -30.0f64..30.0) {
        prop_assume!((re - 1.0).abs() > 0.05 || im.abs() > 0.5);
        let tol = 1e-20;
        let ctx = PrecisionContext::new(P, tol).unwrap();
        let s = c(re, im);
        let em = zeta(&s, &ctx).unwrap();
        let alt = zeta_eta(&s, P);
        let diff = (em.value - &alt).hypot_f64();
        prop_assert!(diff <= 10.0 * tol, "{:e}", diff);
    }

    #[test]
    fn ratio_conjugate_symmetry(re in 0.55f64..2.0, im in 0.0f64..60.0) {
        let ctx = PrecisionContext::new(P, 1e-12).unwrap();
        let a = f_ratio(&c(re, im), &ctx).unwrap();
        let b = f_ratio(&c(re, -im), &ctx).unwrap();
        prop_assert!((a.value.conj() - &b.value).hypot_f64() <= 2.0 * (a.err_bound + b.err_bound).max(1e-70));
    }
}
