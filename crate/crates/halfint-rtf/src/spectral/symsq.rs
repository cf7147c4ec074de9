//! Petersson norms through `L(1, sym^2 F)` for the Shimura correspondent `F` of a plus space
//! generator, when `F` is the unique normalized eigenform of level one.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use super::moment::SpectralData;
use super::petersson::inner_product;
use super::qexp::{evaluate_form, IntSeries, QExpansion};
use super::SpectralError;
use crate::arithmetic::{is_prime, sigma};
use crate::specfun::{gamma_c, tanh_sinh};

/// Euler product cutoff for `L(1, sym^2 F)`.
pub const SYM2_PRIME_BOUND: usize = 10_000;

/// `Delta = q prod (1 - q^n)^24 = q (sum_n (-1)^n (2n+1) q^{n(n+1)/2})^8`.
pub fn delta_series(len: usize) -> Result<IntSeries, SpectralError> {
    let mut eta3 = vec![0i128; len];
    let mut n = 0usize;
    while n * (n + 1) / 2 < len {
        eta3[n * (n + 1) / 2] = if n % 2 == 0 { 2 * n as i128 + 1 } else { -(2 * n as i128 + 1) };
        n += 1;
    }
    let p = IntSeries(eta3).pow(8)?;
    let mut out = vec![0i128; len];
    out[1..].copy_from_slice(&p.0[..len - 1]);
    Ok(IntSeries(out))
}

fn eisenstein(k: u32, len: usize) -> IntSeries {
    let factor: i128 = match k {
        4 => 240,
        6 => -504,
        _ => unreachable!("only E4 and E6 are needed"),
    };
    let mut c = vec![0i128; len];
    c[0] = 1;
    for (n, slot) in c.iter_mut().enumerate().skip(1) {
        *slot = factor * sigma(n as u64, k - 1) as i128;
    }
    IntSeries(c)
}

/// The normalized eigenform spanning `S_k(SL2(Z))` for `k` in 12, 16, 18, 20, 22, 26.
pub fn level_one_eigenform(k: u32, len: usize) -> Result<IntSeries, SpectralError> {
    let (a, b) = match k {
        12 => (0, 0),
        16 => (1, 0),
        18 => (0, 1),
        20 => (2, 0),
        22 => (1, 1),
        26 => (2, 1),
        _ => return Err(SpectralError::Domain(format!("S_{k}(SL2(Z)) is not one-dimensional"))),
    };
    let mut f = delta_series(len)?;
    for _ in 0..a {
        f = f.mul(&eisenstein(4, len))?;
    }
    for _ in 0..b {
        f = f.mul(&eisenstein(6, len))?;
    }
    Ok(f)
}

/// Partial Euler product of `L(1, sym^2 F)` over `p <= bound`, with local factor
/// `[(1 - (l^2 - 2) X + X^2)(1 - X)]^{-1}`, `X = 1/p`, `l = a(p) / p^{(k-1)/2}`.
pub fn sym2_euler(coeffs: &[f64], k: u32, bound: usize) -> f64 {
    let mut log = 0.0;
    for p in 2..=bound.min(coeffs.len() - 1) {
        if !is_prime(p as u64) {
            continue;
        }
        let x = 1.0 / p as f64;
        let l = coeffs[p] / (p as f64).powf((k as f64 - 1.0) / 2.0);
        log -= (1.0 - (l * l - 2.0) * x + x * x).ln() + (1.0 - x).ln();
    }
    log.exp()
}

/// `L(1/2, F) = (2 pi)^{k/2} / Gamma(k/2) 2 int_1^inf F(iy) y^{k/2 - 1} dy`, root number `+1`.
pub fn central_value_level_one(f: &QExpansion, k: u32) -> Result<f64, SpectralError> {
    if k % 4 != 0 {
        return Err(SpectralError::Domain(format!("root number of weight {k} is -1")));
    }
    let h = k as f64 / 2.0;
    let integral = tanh_sinh(
        |y| evaluate_form(f, Complex64::new(0.0, y)).map_or(Complex64::new(f64::NAN, 0.0), |v| v * y.powf(h - 1.0)),
        1.0,
        14.0 + h,
        1e-13,
    )?;
    let norm = (2.0 * PI).powf(h) / gamma_c(Complex64::new(h, 0.0))?.re;
    Ok(2.0 * integral.re * norm)
}

/// Gram-side norm of the plus space generator against `2 pi Gamma(kappa) L(1, sym^2 F) / (4 pi)^kappa`,
/// both for the scaling `c(1)^2 = pi^2 L(1/2, F)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SymSquareCheck {
    pub gram_norm: f64,
    pub formula_norm: f64,
    pub ratio: f64,
    pub l_sym2: f64,
    /// `|L(X) - L(X/2)| / L(X)` for the Euler product cutoff `X`.
    pub l_sym2_tail: f64,
    pub l_half: f64,
}

pub fn sym2_norm_check(data: &SpectralData) -> Result<SymSquareCheck, SpectralError> {
    let w = data.config.weight;
    let plus = data.basis.plus_space();
    if plus.nrows() != 1 {
        return Err(SpectralError::Dimension { expected: 1, found: plus.nrows() });
    }
    let k_int = w.twice() - 1;
    let len = SYM2_PRIME_BOUND + 1;
    let big = level_one_eigenform(k_int, len)?;
    let coeffs: Vec<f64> = big.0.iter().map(|&c| c as f64).collect();
    let short = QExpansion { twice_weight: 2 * k_int, coeffs: coeffs[..400].to_vec() };
    let l_half = central_value_level_one(&short, k_int)?;
    let l_sym2 = sym2_euler(&coeffs, k_int, SYM2_PRIME_BOUND);
    let l_sym2_tail = (l_sym2 - sym2_euler(&coeffs, k_int, SYM2_PRIME_BOUND / 2)).abs() / l_sym2;

    let mut x: Vec<f64> = plus.row(0).iter().copied().collect();
    let c1 = data.basis.combine(&x).coeff(1);
    if c1 == 0.0 {
        return Err(SpectralError::Numerical { what: "plus space normalization", detail: "c(1) = 0".into() });
    }
    let target = PI * l_half.sqrt();
    x.iter_mut().for_each(|v| *v *= target / c1);
    let gram_norm = inner_product(&data.gram, &x, &x);
    let kappa = w.kappa();
    let formula_norm = 2.0 * PI * gamma_c(Complex64::new(kappa, 0.0))?.re * l_sym2 / (4.0 * PI).powf(kappa);
    Ok(SymSquareCheck { gram_norm, formula_norm, ratio: gram_norm / formula_norm, l_sym2, l_sym2_tail, l_half })
}
