//! Gamma, log-gamma, digamma and beta for complex arguments.

use num_complex::Complex64;
use std::f64::consts::PI;

use super::{SpecfunError, BERNOULLI_EVEN};

const SHIFT_TARGET: f64 = 15.0;
const HALF_LN_2PI: f64 = 0.918_938_533_204_672_8;

fn is_nonpositive_integer(z: Complex64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round()
}

fn shift_count(z: Complex64) -> usize {
    if z.norm() >= SHIFT_TARGET {
        0
    } else {
        (SHIFT_TARGET - z.re).ceil().max(0.0) as usize
    }
}

fn ln_gamma_asymptotic(w: Complex64) -> Complex64 {
    let inv = w.inv();
    let inv2 = inv * inv;
    let mut series = Complex64::new(0.0, 0.0);
    let mut p = inv;
    for (k, b) in BERNOULLI_EVEN.iter().take(12).enumerate() {
        let k = (k + 1) as f64;
        series += p * (b / (2.0 * k * (2.0 * k - 1.0)));
        p *= inv2;
    }
    (w - 0.5) * w.ln() - w + HALF_LN_2PI + series
}

/// `Gamma(z)`.
pub fn gamma_c(z: Complex64) -> Result<Complex64, SpecfunError> {
    if is_nonpositive_integer(z) {
        return Err(SpecfunError::Pole(z));
    }
    if z.re < 0.5 {
        let s = (z * PI).sin();
        return Ok(PI / (s * gamma_c(1.0 - z)?));
    }
    let n = shift_count(z);
    let mut prod = Complex64::new(1.0, 0.0);
    for k in 0..n {
        prod *= z + k as f64;
    }
    Ok(ln_gamma_asymptotic(z + n as f64).exp() / prod)
}

/// `1/Gamma(z)`, entire, vanishing at the nonpositive integers.
pub fn rgamma(z: Complex64) -> Result<Complex64, SpecfunError> {
    if is_nonpositive_integer(z) {
        return Ok(Complex64::new(0.0, 0.0));
    }
    Ok(gamma_c(z)?.inv())
}

/// A logarithm of `Gamma(z)` for `Re z > 0`, continuous in `z`.
pub fn ln_gamma(z: Complex64) -> Result<Complex64, SpecfunError> {
    if z.re <= 0.0 {
        return Err(SpecfunError::Domain(format!("ln_gamma needs Re z > 0, got {z}")));
    }
    let n = shift_count(z);
    let mut acc = ln_gamma_asymptotic(z + n as f64);
    for k in 0..n {
        acc -= (z + k as f64).ln();
    }
    Ok(acc)
}

/// Digamma `Gamma'(z)/Gamma(z)`.
pub fn digamma(z: Complex64) -> Result<Complex64, SpecfunError> {
    if is_nonpositive_integer(z) {
        return Err(SpecfunError::Pole(z));
    }
    if z.re < 0.5 {
        let cot = (z * PI).cos() / (z * PI).sin();
        return Ok(digamma(1.0 - z)? - cot * PI);
    }
    let n = shift_count(z);
    let mut acc = Complex64::new(0.0, 0.0);
    for k in 0..n {
        acc -= (z + k as f64).inv();
    }
    let w = z + n as f64;
    let inv2 = (w * w).inv();
    let mut p = inv2;
    let mut series = Complex64::new(0.0, 0.0);
    for (k, b) in BERNOULLI_EVEN.iter().take(12).enumerate() {
        series += p * (b / (2.0 * (k + 1) as f64));
        p *= inv2;
    }
    Ok(acc + w.ln() - 0.5 / w - series)
}

/// `B(x, y) = Gamma(x) Gamma(y) / Gamma(x + y)`.
pub fn beta(x: Complex64, y: Complex64) -> Result<Complex64, SpecfunError> {
    let gx = gamma_c(x)?;
    let gy = gamma_c(y)?;
    if is_nonpositive_integer(x + y) {
        return Ok(Complex64::new(0.0, 0.0));
    }
    Ok(gx * gy / gamma_c(x + y)?)
}
