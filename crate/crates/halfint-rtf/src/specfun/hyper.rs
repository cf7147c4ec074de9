//! Gauss hypergeometric function on `[0, 1)` and its boundary values on the cut `(1, inf)`.

use num_complex::Complex64;
use std::f64::consts::PI;

use super::{digamma, gamma_c, rgamma, CompensatedSum, SpecfunError};

const SERIES_LIMIT: f64 = 0.6;
/// With positive real parameters all series terms are positive, so the direct series is used
/// up to here; the logarithmic expansion cancels badly for large parameters.
const POSITIVE_SERIES_LIMIT: f64 = 0.9;
/// On the cut the logarithmic expansion is used for `x - 1` up to here, the expansion in `1/x` beyond.
const CUT_LOG_LIMIT: f64 = 0.25;
const MAX_TERMS: usize = 200_000;
const TOL: f64 = 1e-17;

/// Side of the branch cut `(1, inf)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum CutSide {
    /// `x + i0`
    Above,
    /// `x - i0`
    Below,
    /// Average of the two boundary values.
    Mean,
}

fn nonpositive_integer(z: Complex64) -> Option<usize> {
    (z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round()).then(|| (-z.re) as usize)
}

fn near_integer(z: Complex64) -> Option<i64> {
    let r = z.re.round();
    ((z - r).norm() < 1e-12).then_some(r as i64)
}

/// Raw Gauss series, valid for `|x| < 1`.
pub fn gauss_series(a: Complex64, b: Complex64, c: Complex64, x: f64) -> Result<Complex64, SpecfunError> {
    let mut term = Complex64::new(1.0, 0.0);
    let mut acc = CompensatedSum::new();
    acc.add(term);
    for k in 0..MAX_TERMS {
        let kf = k as f64;
        term *= (a + kf) * (b + kf) / ((c + kf) * (kf + 1.0)) * x;
        acc.add(term);
        if term.norm() <= TOL * acc.value().norm() && k > 2 {
            return Ok(acc.value());
        }
        if term.norm() == 0.0 {
            return Ok(acc.value());
        }
    }
    Err(SpecfunError::NoConvergence { what: "gauss series", detail: format!("x={x}") })
}

/// `F(a, b; a + b; x)` through the logarithmic expansion around `x = 1`.
/// `log_one_minus_x` carries the branch of `log(1 - x)`.
fn log_case(a: Complex64, b: Complex64, y: f64, log_one_minus_x: Complex64) -> Result<Complex64, SpecfunError> {
    let pref = gamma_c(a + b)? * rgamma(a)? * rgamma(b)?;
    let mut psi_n1 = digamma(Complex64::new(1.0, 0.0))?;
    let mut psi_a = digamma(a)?;
    let mut psi_b = digamma(b)?;
    let mut coeff = Complex64::new(1.0, 0.0);
    let mut acc = CompensatedSum::new();
    for n in 0..MAX_TERMS {
        let nf = n as f64;
        let term = coeff * (2.0 * psi_n1 - psi_a - psi_b - log_one_minus_x);
        acc.add(term);
        if term.norm() <= TOL * acc.value().norm() && n > 2 {
            return Ok(pref * acc.value());
        }
        coeff *= (a + nf) * (b + nf) / ((nf + 1.0) * (nf + 1.0)) * y;
        psi_n1 += 1.0 / (nf + 1.0);
        psi_a += (a + nf).inv();
        psi_b += (b + nf).inv();
        if coeff.norm() == 0.0 {
            return Ok(pref * acc.value());
        }
    }
    Err(SpecfunError::NoConvergence { what: "logarithmic 2F1 expansion", detail: format!("1-x={y}") })
}

/// `F(a, b; c; x)` for real `x` in `[0, 1)`.
pub fn hyp2f1(a: Complex64, b: Complex64, c: Complex64, x: f64) -> Result<Complex64, SpecfunError> {
    if nonpositive_integer(c).is_some() {
        return Err(SpecfunError::Pole(c));
    }
    if !(0.0..1.0).contains(&x) {
        return Err(SpecfunError::Domain(format!("hyp2f1 needs x in [0, 1), got {x}")));
    }
    if 1.0 - x < 1e-8 {
        return Err(SpecfunError::Domain(format!("x={x} too close to 1")));
    }
    let positive = [a, b, c].iter().all(|p| p.im == 0.0 && p.re > 0.0);
    let limit = if positive { POSITIVE_SERIES_LIMIT } else { SERIES_LIMIT };
    if x <= limit || nonpositive_integer(a).is_some() || nonpositive_integer(b).is_some() {
        return gauss_series(a, b, c, x);
    }
    let y = 1.0 - x;
    let e = c - a - b;
    match near_integer(e) {
        Some(0) => log_case(a, b, y, Complex64::new(y.ln(), 0.0)),
        Some(_) => gauss_series(a, b, c, x),
        None => {
            let g1 = gamma_c(c)? * gamma_c(e)? * rgamma(c - a)? * rgamma(c - b)?;
            let g2 = gamma_c(c)? * gamma_c(-e)? * rgamma(a)? * rgamma(b)?;
            let f1 = gauss_series(a, b, 1.0 - e, y)?;
            let f2 = gauss_series(c - a, c - b, e + 1.0, y)?;
            Ok(g1 * f1 + g2 * (e * y.ln()).exp() * f2)
        }
    }
}

/// Boundary value of `F(a, b; a + b; x)` for `x > 1` on the chosen side of the cut.
/// Beyond `x = 2` unequal parameters are not supported.
pub fn hyp2f1_cut(a: Complex64, b: Complex64, x: f64, side: CutSide) -> Result<Complex64, SpecfunError> {
    if !(x > 1.0) {
        return Err(SpecfunError::Domain(format!("cut evaluation needs x > 1, got {x}")));
    }
    if x - 1.0 < 1e-8 {
        return Err(SpecfunError::Domain(format!("x={x} too close to 1")));
    }
    match side {
        CutSide::Mean => {
            let above = hyp2f1_cut(a, b, x, CutSide::Above)?;
            let below = hyp2f1_cut(a, b, x, CutSide::Below)?;
            Ok((above + below) * 0.5)
        }
        CutSide::Above | CutSide::Below => {
            let sign = if side == CutSide::Above { -1.0 } else { 1.0 };
            let equal = (a - b).norm() <= 1e-14;
            if x - 1.0 <= CUT_LOG_LIMIT || (!equal && x < 2.0) {
                let log = Complex64::new((x - 1.0).ln(), sign * PI);
                log_case(a, b, 1.0 - x, log)
            } else {
                if !equal {
                    return Err(SpecfunError::Domain("expansion in 1/x implemented for a = b".into()));
                }
                large_x_equal(a, a + b, x, Complex64::new(x.ln(), sign * PI))
            }
        }
    }
}

/// `F(a, a; c; x)` for `x > 1` from the expansion in `1/x`, `log_minus_x` the branch of `log(-x)`.
fn large_x_equal(a: Complex64, c: Complex64, x: f64, log_minus_x: Complex64) -> Result<Complex64, SpecfunError> {
    let pref = gamma_c(c)? * rgamma(a)? * rgamma(c - a)? * (-a * log_minus_x).exp();
    let w = 1.0 / x;
    let mut psi_n1 = digamma(Complex64::new(1.0, 0.0))?;
    let mut psi_a = digamma(a)?;
    let mut psi_c = digamma(c - a)?;
    let mut coeff = Complex64::new(1.0, 0.0);
    let mut acc = CompensatedSum::new();
    let d = 1.0 - c + a;
    for n in 0..MAX_TERMS {
        let nf = n as f64;
        let term = coeff * (log_minus_x + 2.0 * psi_n1 - psi_a - psi_c);
        acc.add(term);
        if term.norm() <= TOL * acc.value().norm() && n > 2 {
            return Ok(pref * acc.value());
        }
        coeff *= (a + nf) * (d + nf) / ((nf + 1.0) * (nf + 1.0)) * w;
        psi_n1 += 1.0 / (nf + 1.0);
        psi_a += (a + nf).inv();
        psi_c -= (c - a - nf - 1.0).inv();
    }
    Err(SpecfunError::NoConvergence { what: "2F1 expansion in 1/x", detail: format!("x={x}") })
}
