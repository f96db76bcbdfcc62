mod common;

use common::*;
use rhxi::zeros::*;
use rhxi::{Error, PrecisionContext};
use rug::Float;

fn ctx() -> PrecisionContext {
    PrecisionContext::new(256, 1e-12).unwrap()
}

#[test]
fn count_and_values_up_to_sixty() {
    let z = scan_zeros(60.0, DEFAULT_SCAN_STEP, &ctx()).unwrap();
    assert_eq!(z.len(), ZERO_ORDINATES.len());
    for (g, want) in z.ordinates.iter().zip(ZERO_ORDINATES) {
        assert!(abs_diff(g, &float(256, want)) < 1e-15);
    }
    assert!(z.ordinates.windows(2).all(|w| w[0] < w[1]));
    assert!(z.warnings.is_empty());
}

#[test]
fn brackets_change_sign() {
    let ctx = ctx();
    let z = scan_zeros(30.0, DEFAULT_SCAN_STEP, &ctx).unwrap();
    assert_eq!(z.len(), 3);
    // signs this close to a zero are only resolved well below the scan tolerance
    let fine = ctx.tightened(1e-50);
    for (g, r) in z.ordinates.iter().zip(&z.radii) {
        let lo = Float::with_val(256, g - *r);
        let hi = Float::with_val(256, g + *r);
        let (a, ea) = hardy_xi(&lo, &fine).unwrap();
        let (b, eb) = hardy_xi(&hi, &fine).unwrap();
        assert!(a.to_f64().abs() > ea && b.to_f64().abs() > eb);
        assert_ne!(a.is_sign_positive(), b.is_sign_positive());
    }
}

#[test]
fn tiny_bracket_returns_midpoint() {
    let g = ZERO_ORDINATES[0].parse::<f64>().unwrap();
    let h = 1e-12;
    let (x, r) = refine_zero(g - h, g + h, &ctx()).unwrap();
    assert!((x.to_f64() - g).abs() <= h + r);
}

#[test]
fn no_sign_change_error() {
    assert!(matches!(refine_zero(15.0, 16.0, &ctx()), Err(Error::NoSignChange { .. })));
}

#[test]
fn csv_output() {
    let z = scan_zeros(30.0, DEFAULT_SCAN_STEP, &ctx()).unwrap();
    let mut buf = Vec::new();
    z.write_csv(&mut buf, 20).unwrap();
    let text = String::from_utf8(buf).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "n,gamma,radius");
    assert_eq!(lines.len(), 4);
    assert!(lines[1].starts_with("1,14.134725"));
}
