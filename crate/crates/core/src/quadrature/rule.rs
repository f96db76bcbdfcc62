//! Gauss-Kronrod rules generated at arbitrary precision.
//!
//! Gauss nodes are roots of P_n. The n+1 Kronrod extension nodes are the roots
//! of the Stieltjes polynomial E_{n+1}, whose monomial coefficients come from an
//! exact rational solve of its orthogonality conditions against P_n. Kronrod
//! weights follow from exactness on P_0..P_{2n}.

use std::cmp::Ordering;

use rug::{Float, Integer, Rational};

/// A (n, 2n+1) Gauss-Kronrod pair on [-1, 1].
#[derive(Clone, Debug)]
pub struct GaussKronrod {
    prec: u32,
    /// all 2n+1 nodes, ascending
    nodes: Vec<Float>,
    kronrod_weights: Vec<Float>,
    /// Gauss weights, zero at the Kronrod-only positions
    gauss_weights: Vec<Float>,
}

impl GaussKronrod {
    /// The 10/21-point pair.
    pub fn g10k21(prec: u32) -> Self {
        Self::new(10, prec)
    }

    pub fn new(n: usize, prec: u32) -> Self {
        assert!(n >= 2, "Gauss-Kronrod needs at least two Gauss nodes");
        let work = prec + 64;
        let gauss = legendre_roots(n, work);
        let stieltjes: Vec<Float> = stieltjes_coefficients(n)
            .iter()
            .map(|c| Float::with_val(work, c))
            .collect();
        let mut brackets = Vec::with_capacity(n + 1);
        let mut lo = Float::with_val(work, -1);
        for g in &gauss {
            brackets.push((lo, g.clone()));
            lo = g.clone();
        }
        brackets.push((lo, Float::with_val(work, 1)));
        let extension: Vec<Float> = brackets
            .into_iter()
            .map(|(a, b)| polynomial_root(&stieltjes, a, b, work))
            .collect();

        let mut all: Vec<(Float, Option<Float>)> = Vec::with_capacity(2 * n + 1);
        for g in &gauss {
            let (_, dp) = legendre_with_derivative(n, g);
            let one_minus = Float::with_val(work, 1) - Float::with_val(work, g.square_ref());
            let w = Float::with_val(work, 2) / (one_minus * dp.square());
            all.push((g.clone(), Some(w)));
        }
        for e in extension {
            all.push((e, None));
        }
        all.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap_or(Ordering::Equal));

        let nodes: Vec<Float> = all.iter().map(|(x, _)| x.clone()).collect();
        let kronrod = kronrod_weights(&nodes, work);
        Self {
            prec,
            nodes: nodes.iter().map(|x| Float::with_val(prec, x)).collect(),
            kronrod_weights: kronrod.iter().map(|w| Float::with_val(prec, w)).collect(),
            gauss_weights: all
                .iter()
                .map(|(_, w)| match w {
                    Some(w) => Float::with_val(prec, w),
                    None => Float::new(prec),
                })
                .collect(),
        }
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[Float] {
        &self.nodes
    }

    pub fn kronrod_weights(&self) -> &[Float] {
        &self.kronrod_weights
    }

    pub fn gauss_weights(&self) -> &[Float] {
        &self.gauss_weights
    }
}

/// (P_n(x), P_n'(x)) by the three-term recurrence.
fn legendre_with_derivative(n: usize, x: &Float) -> (Float, Float) {
    let prec = x.prec();
    let mut p_prev = Float::with_val(prec, 1);
    let mut p = x.clone();
    for k in 2..=n {
        let kf = k as u32;
        let next = (Float::with_val(prec, x * &p) * (2 * kf - 1) - Float::with_val(prec, &p_prev * (kf - 1))) / kf;
        p_prev = std::mem::replace(&mut p, next);
    }
    // (1 - x^2) P_n' = n (P_{n-1} - x P_n)
    let one_minus = Float::with_val(prec, 1) - Float::with_val(prec, x.square_ref());
    let dp = (p_prev - Float::with_val(prec, x * &p)) * (n as u32) / one_minus;
    (p, dp)
}

fn legendre_roots(n: usize, prec: u32) -> Vec<Float> {
    let mut roots = Vec::with_capacity(n);
    for i in 0..n {
        let guess = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut x = Float::with_val(prec, guess);
        for _ in 0..100 {
            let (p, dp) = legendre_with_derivative(n, &x);
            let step = p / dp;
            x -= &step;
            if step.is_zero() || step.get_exp().map_or(true, |e| e < -(prec as i32) + 4) {
                break;
            }
        }
        roots.push(x);
    }
    roots.sort_by(|a, b| a.partial_cmp(b).unwrap_or(Ordering::Equal));
    roots
}

/// Monomial coefficients (index = power) of P_n, exact.
fn legendre_monomial(n: usize) -> Vec<Rational> {
    let mut coeffs = vec![Rational::new(); n + 1];
    let scale = Integer::from(Integer::u_pow_u(2, n as u32));
    for k in 0..=n / 2 {
        let a = Integer::from(Integer::binomial_u(n as u32, k as u32));
        let b = Integer::from(Integer::binomial_u((2 * n - 2 * k) as u32, n as u32));
        let mut c = Rational::from((a * b, scale.clone()));
        if k % 2 == 1 {
            c = -c;
        }
        coeffs[n - 2 * k] = c;
    }
    coeffs
}

/// Monomial coefficients of the monic Stieltjes polynomial E_{n+1}.
fn stieltjes_coefficients(n: usize) -> Vec<Rational> {
    let p = legendre_monomial(n);
    // mu[m] = integral of P_n(x) x^m over [-1, 1]
    let moment = |m: usize| -> Rational {
        let mut acc = Rational::new();
        for (i, c) in p.iter().enumerate() {
            if (i + m) % 2 == 0 && c.cmp0() != Ordering::Equal {
                acc += Rational::from((2, (i + m + 1) as u32)) * c;
            }
        }
        acc
    };
    let parity = (n + 1) % 2;
    let unknown_powers: Vec<usize> = (0..=n).filter(|j| j % 2 == parity).collect();
    let test_powers: Vec<usize> = (0..=n).filter(|k| (k + n + n + 1) % 2 == 0).collect();
    assert_eq!(unknown_powers.len(), test_powers.len());
    let size = unknown_powers.len();
    let mut matrix: Vec<Vec<Rational>> = test_powers
        .iter()
        .map(|&k| {
            let mut row: Vec<Rational> = unknown_powers.iter().map(|&j| moment(j + k)).collect();
            row.push(-moment(n + 1 + k));
            row
        })
        .collect();
    // exact Gauss-Jordan
    for col in 0..size {
        let pivot = (col..size)
            .find(|&r| matrix[r][col].cmp0() != Ordering::Equal)
            .expect("Stieltjes system is nonsingular");
        matrix.swap(col, pivot);
        let inv = Rational::from(1) / matrix[col][col].clone();
        for c in col..=size {
            matrix[col][c] *= &inv;
        }
        for r in 0..size {
            if r != col && matrix[r][col].cmp0() != Ordering::Equal {
                let factor = matrix[r][col].clone();
                for c in col..=size {
                    let delta = Rational::from(&factor * &matrix[col][c]);
                    matrix[r][c] -= delta;
                }
            }
        }
    }
    let mut coeffs = vec![Rational::new(); n + 2];
    coeffs[n + 1] = Rational::from(1);
    for (row, &j) in unknown_powers.iter().enumerate() {
        coeffs[j] = matrix[row][size].clone();
    }
    coeffs
}

fn horner(coeffs: &[Float], x: &Float) -> (Float, Float) {
    let prec = x.prec();
    let mut value = Float::new(prec);
    let mut deriv = Float::new(prec);
    for c in coeffs.iter().rev() {
        deriv = Float::with_val(prec, &deriv * x) + &value;
        value = Float::with_val(prec, &value * x) + c;
    }
    (value, deriv)
}

/// The single root of the polynomial inside (a, b): bisection to f64 accuracy,
/// then Newton kept inside the bracket.
fn polynomial_root(coeffs: &[Float], mut a: Float, mut b: Float, prec: u32) -> Float {
    let sign_a = horner(coeffs, &a).0.is_sign_positive();
    for _ in 0..60 {
        let mid = Float::with_val(prec, &a + &b) / 2u32;
        if horner(coeffs, &mid).0.is_sign_positive() == sign_a {
            a = mid;
        } else {
            b = mid;
        }
    }
    let mut x = Float::with_val(prec, &a + &b) / 2u32;
    for _ in 0..100 {
        let (v, d) = horner(coeffs, &x);
        let step = v / d;
        let next = Float::with_val(prec, &x - &step);
        if next < a || next > b {
            break;
        }
        x = next;
        if step.is_zero() || step.get_exp().map_or(true, |e| e < -(prec as i32) + 4) {
            break;
        }
    }
    x
}

/// Weights with sum_i w_i P_k(x_i) = 2 delta_{k0} for k < len(nodes).
fn kronrod_weights(nodes: &[Float], prec: u32) -> Vec<Float> {
    let m = nodes.len();
    let mut rows: Vec<Vec<Float>> = Vec::with_capacity(m);
    // rows[k][i] = P_k(x_i)
    let mut p_prev: Vec<Float> = nodes.iter().map(|_| Float::with_val(prec, 1)).collect();
    let mut p_cur: Vec<Float> = nodes.iter().map(|x| Float::with_val(prec, x)).collect();
    rows.push(p_prev.clone());
    if m > 1 {
        rows.push(p_cur.clone());
    }
    for k in 1..m.saturating_sub(1) {
        let kf = k as u32;
        let next: Vec<Float> = nodes
            .iter()
            .zip(p_cur.iter().zip(p_prev.iter()))
            .map(|(x, (pc, pp))| {
                (Float::with_val(prec, x * pc) * (2 * kf + 1) - Float::with_val(prec, pp * kf)) / (kf + 1)
            })
            .collect();
        p_prev = std::mem::replace(&mut p_cur, next);
        rows.push(p_cur.clone());
    }
    let mut aug: Vec<Vec<Float>> = rows
        .into_iter()
        .enumerate()
        .map(|(k, mut row)| {
            row.push(Float::with_val(prec, if k == 0 { 2 } else { 0 }));
            row
        })
        .collect();
    for col in 0..m {
        let pivot = (col..m)
            .max_by(|&a, &b| {
                Float::with_val(prec, aug[a][col].abs_ref())
                    .partial_cmp(&Float::with_val(prec, aug[b][col].abs_ref()))
                    .unwrap_or(Ordering::Equal)
            })
            .expect("non-empty");
        aug.swap(col, pivot);
        for r in col + 1..m {
            let factor = Float::with_val(prec, &aug[r][col] / &aug[col][col]);
            if factor.is_zero() {
                continue;
            }
            for c in col..=m {
                let delta = Float::with_val(prec, &factor * &aug[col][c]);
                aug[r][c] -= delta;
            }
        }
    }
    let mut w = vec![Float::new(prec); m];
    for i in (0..m).rev() {
        let mut acc = aug[i][m].clone();
        for j in i + 1..m {
            acc -= Float::with_val(prec, &aug[i][j] * &w[j]);
        }
        w[i] = acc / &aug[i][i];
    }
    w
}

#[cfg(test)]
mod tests {
    use super::*;
    use rug::ops::Pow;

    // QUADPACK qk21 abscissae and weights for x >= 0, descending
    const XGK: [f64; 11] = [
        0.995657163025808080735527280689003,
        0.973906528517171720077964012084452,
        0.930157491355708226001207180059508,
        0.865063366688984510732096688423493,
        0.780817726586416897063717578345042,
        0.679409568299024406234327365114874,
        0.562757134668604683339000099272694,
        0.433395394129247190799265943165784,
        0.294392862701460198131126603103866,
        0.148874338981631210884826001129720,
        0.000000000000000000000000000000000,
    ];
    const WGK: [f64; 11] = [
        0.011694638867371874278064396062192,
        0.032558162307964727478818972459390,
        0.054755896574351996031381300244580,
        0.075039674810919952767043140916190,
        0.093125454583697605535065465083366,
        0.109387158802297641899210590325805,
        0.123491976262065851077208640931201,
        0.134709217311473325928054001771707,
        0.142775938577060080797094273138717,
        0.147739104901338491374841515972068,
        0.149445554002916905664936468389821,
    ];
    const WG: [f64; 5] = [
        0.066671344308688137593568809893332,
        0.149451349150580593145776339657697,
        0.219086362515982043995534934228163,
        0.269266719309996355091226921569469,
        0.295524224714752870173892994651338,
    ];

    #[test]
    fn matches_quadpack_tables() {
        let rule = GaussKronrod::g10k21(128);
        assert_eq!(rule.len(), 21);
        for i in 0..11 {
            let idx = 20 - i;
            assert!((rule.nodes()[idx].to_f64() - XGK[i]).abs() < 1e-15, "node {i}");
            assert!((rule.kronrod_weights()[idx].to_f64() - WGK[i]).abs() < 1e-15, "kronrod weight {i}");
        }
        for (j, wg) in WG.iter().enumerate() {
            // Gauss nodes sit at odd positions from the top
            let idx = 20 - (2 * j + 1);
            assert!((rule.gauss_weights()[idx].to_f64() - wg).abs() < 1e-15, "gauss weight {j}");
        }
    }

    #[test]
    fn weights_sum_to_two_at_high_precision() {
        let rule = GaussKronrod::g10k21(256);
        let k: Float = rule.kronrod_weights().iter().fold(Float::new(256), |acc, w| acc + w);
        let g: Float = rule.gauss_weights().iter().fold(Float::new(256), |acc, w| acc + w);
        assert!((k - 2u32).abs().to_f64() < 1e-70);
        assert!((g - 2u32).abs().to_f64() < 1e-70);
    }

    #[test]
    fn kronrod_exact_to_degree_3n_plus_1() {
        let rule = GaussKronrod::g10k21(256);
        for deg in [2u32, 10, 20, 30] {
            let sum = rule
                .nodes()
                .iter()
                .zip(rule.kronrod_weights())
                .fold(Float::new(256), |acc, (x, w)| acc + Float::with_val(256, x).pow(deg) * w);
            let exact = 2.0 / (deg as f64 + 1.0);
            assert!((sum.to_f64() - exact).abs() < 1e-60, "degree {deg}");
        }
    }

    #[test]
    fn smaller_pair_is_consistent() {
        let rule = GaussKronrod::new(7, 128);
        assert_eq!(rule.len(), 15);
        // largest G7-K15 Kronrod node
        assert!((rule.nodes()[14].to_f64() - 0.991455371120812639206854697526329).abs() < 1e-15);
    }
}
