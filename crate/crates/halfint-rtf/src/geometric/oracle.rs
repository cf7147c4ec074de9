//! Direct evaluation of orbital integrals from their defining sums over matrices,
//! with multipliers from the cocycle route and integrals by quadrature.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::FRAC_PI_2;
use std::sync::Mutex;

use super::{c_kappa, rpow, GeometricError, SpectralPoint};
use crate::arithmetic::{self, gcd3};
use crate::cosets;
use crate::multiplier::{t_general, Mat2};
use crate::params::{OddSquare, Weight};
use crate::specfun::{cpowf, hurwitz_zeta, lattice_sum, tanh_sinh, trapezoid_line, CompensatedSum, SpecfunError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum OracleFamily {
    Small,
    Dual,
    Reg1,
    Reg2,
    Reg3,
}

impl std::str::FromStr for OracleFamily {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "small" => Ok(OracleFamily::Small),
            "dual" => Ok(OracleFamily::Dual),
            "reg1" => Ok(OracleFamily::Reg1),
            "reg2" => Ok(OracleFamily::Reg2),
            "reg3" => Ok(OracleFamily::Reg3),
            other => Err(format!("unknown oracle family {other:?}")),
        }
    }
}

/// Truncation and grid settings of the direct evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OracleLimits {
    /// Regular families: closed-form indices `1..=reg_m_max` are covered.
    pub reg_m_max: u64,
    /// Step of the log-trapezoid rules.
    pub log_step: f64,
    /// Regular families: half-width of the square `[-L, L]^2` in `(log y1, log y2)`.
    pub log_half_width: f64,
}

impl Default for OracleLimits {
    fn default() -> Self {
        OracleLimits { reg_m_max: 40, log_step: 0.3, log_half_width: 18.0 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OracleValue {
    pub value: Complex64,
    /// Number of matrices or residue classes entering the sum.
    pub terms: usize,
    /// Closed-form index range the value corresponds to (regular families).
    pub m_range: Option<(u64, u64)>,
}

fn collect_errors<T: Send>(items: Vec<Result<T, GeometricError>>) -> Result<Vec<T>, GeometricError> {
    items.into_iter().collect()
}

fn t_power(gamma: Mat2, w: Weight) -> Result<Complex64, GeometricError> {
    Ok(t_general(gamma)?.pow(-(w.twice() as i64)).to_complex())
}

/// `int_{-inf}^{inf} f(u) du` by a log-variable trapezoid rule on `[lo, hi]`, failing if any sample fails.
fn guarded_trapezoid<F>(f: F, lo: f64, hi: f64, h: f64) -> Result<Complex64, GeometricError>
where
    F: Fn(f64) -> Result<Complex64, GeometricError> + Sync,
{
    let err = Mutex::new(None);
    let v = trapezoid_line(
        |u| match f(u) {
            Ok(x) => x,
            Err(e) => {
                *err.lock().expect("error slot") = Some(e);
                Complex64::new(0.0, 0.0)
            }
        },
        lo,
        hi,
        h,
    );
    match err.into_inner().expect("error slot") {
        Some(e) => Err(e),
        None => Ok(v),
    }
}

fn geometric_prefactor(n: OddSquare, w: Weight) -> Complex64 {
    Complex64::new(2.0 * (n.get() as f64).powf(w.kappa() - 1.0), 0.0) / c_kappa(w.kappa())
}

/// `int_0^1 u^{x1 - 1} (1 - u)^{x2 - 1} du` by quadrature.
fn beta_quadrature(x1: Complex64, x2: Complex64) -> Result<Complex64, GeometricError> {
    Ok(tanh_sinh(
        |u| ((x1 - 1.0) * u.ln() + (x2 - 1.0) * (1.0 - u).ln()).exp(),
        0.0,
        1.0,
        1e-13,
    )?)
}

/// Small cell: sum over `(a, r; 0, d)`, `r mod d`, of the integral of the lattice sum in `m = r + dk`.
fn small_oracle(s: SpectralPoint, n: OddSquare, w: Weight, limits: &OracleLimits) -> Result<OracleValue, GeometricError> {
    let k = w.kappa();
    if !s.in_small_region(k) {
        return Err(GeometricError::Region { point: s, region: "small-cell" });
    }
    let (al1, al2) = (s.s1 + k / 2.0, s.s2 + k / 2.0);
    let radial = al1 + al2;
    let beta = beta_quadrature(al1, al2)?;
    let h = limits.log_step.min(0.15);
    let lo = -40.0 / s.sum().re;
    let mut acc = CompensatedSum::new();
    let mut terms = 0;
    for a in arithmetic::divisors(n.get() as u64) {
        let a = a as i64;
        let d = n.get() / a;
        let hi = (12.0 * d as f64).ln() + 1.0;
        for r in 0..d {
            if gcd3(a, d, r) != 1 {
                continue;
            }
            terms += 1;
            let t = t_power(Mat2::upper(a, r, d), w)?;
            let radial_integral = guarded_trapezoid(
                |u| {
                    let rho = u.exp();
                    Ok(lattice_sum(d as f64, Complex64::new(r as f64, rho), k, 0)? * rpow(rho, radial))
                },
                lo,
                hi,
                h,
            )?;
            acc.add(t * rpow(a as f64, -al1) * rpow(d as f64, -al2) * radial_integral);
        }
    }
    Ok(OracleValue { value: acc.value() * beta * geometric_prefactor(n, w), terms, m_range: None })
}

/// `U(sign) = int int x1^{al1} x2^{al2} (i (x1 + x2) - sign x1 x2)^{-kappa} dx1/x1 dx2/x2`, written as
/// a radial integral over `rho = x1 x2/(x1 + x2)` of an angular integral in `v = x1/(x1 + x2)`,
/// the latter in the logistic variable `v = 1/(1 + e^{-t})`.
fn dual_kernel(s: SpectralPoint, w: Weight, sign: f64, h: f64) -> Result<Complex64, GeometricError> {
    let k = w.kappa();
    let (al1, al2) = (s.s1 + k / 2.0, s.s2 + k / 2.0);
    let sum = s.sum();
    let lo = -40.0 / sum.re;
    let decay = (k / 2.0 - s.s1.re).min(k / 2.0 - s.s2.re);
    let hi = 40.0 / decay;
    let angular = |rho: f64| {
        let spread = rho.ln().max(0.0);
        trapezoid_line(
            |t| {
                let lv = -(-t).exp().ln_1p();
                let lw = -t.exp().ln_1p();
                let q = (lv + lw).exp();
                (al1 * lv + al2 * lw).exp() * cpowf(Complex64::new(-sign * rho * q, 1.0), -k)
            },
            -spread - 40.0 / al1.re,
            spread + 40.0 / al2.re,
            0.25,
        )
    };
    guarded_trapezoid(|u| Ok(angular(u.exp()) * rpow(u.exp(), sum)), lo, hi, h)
}

/// Dual cell: the scaling `y1 = d x1/|m|`, `y2 = a x2/|m|` reduces each matrix to one of two
/// fixed integrals; the sum over `m` runs over classes mod `4d` through Hurwitz zeta,
/// after checking the multiplier is periodic in `m` with period `4d`.
fn dual_oracle(s: SpectralPoint, n: OddSquare, w: Weight, limits: &OracleLimits) -> Result<OracleValue, GeometricError> {
    let k = w.kappa();
    if !s.in_dual_region(k) {
        return Err(GeometricError::Region { point: s, region: "dual-cell" });
    }
    let sum = s.sum();
    let (al1, al2) = (s.s1 + k / 2.0, s.s2 + k / 2.0);
    let h = limits.log_step.min(0.25);
    let kernels = [dual_kernel(s, w, 1.0, h)?, dual_kernel(s, w, -1.0, h)?];
    let nn = n.get() as f64;
    let mut acc = CompensatedSum::new();
    let mut terms = 0;
    for a in arithmetic::divisors(n.get() as u64) {
        let a = a as i64;
        let d = n.get() / a;
        let period = 4 * d;
        for (kernel, sign) in kernels.iter().zip([1i64, -1]) {
            let mut series = CompensatedSum::new();
            for r in (4..=period).step_by(4) {
                if gcd3(a, d, r) != 1 {
                    continue;
                }
                terms += 1;
                let t = t_power(Mat2::lower(a, sign * r, d), w)?;
                let shifted = t_power(Mat2::lower(a, sign * (r + period), d), w)?;
                if t != shifted {
                    return Err(GeometricError::Config(format!("multiplier of (a, 0; m, d) not {period}-periodic at a={a}, d={d}, m={}", sign * r)));
                }
                let z = hurwitz_zeta(sum, r as f64 / period as f64)?;
                series.add(t * z * rpow(period as f64, -sum));
            }
            acc.add(*kernel * series.value() * rpow(d as f64, al1) * rpow(a as f64, al2));
        }
    }
    let value = acc.value() * nn.powf(-k) * geometric_prefactor(n, w);
    Ok(OracleValue { value, terms, m_range: None })
}

/// `int int y1^{kappa/2} y2^{kappa/2} (c i y1 + d)^{-kappa} (gamma(i y1) + i y2)^{-kappa} dy1/y1 dy2/y2`.
fn regular_matrix_integral(gamma: Mat2, kappa: f64, limits: &OracleLimits) -> Complex64 {
    let h = limits.log_step;
    let half = limits.log_half_width;
    let steps = (2.0 * half / h).round() as i64;
    let mut acc = CompensatedSum::new();
    for i in 0..=steps {
        let y1 = (-half + i as f64 * h).exp();
        let z = Complex64::new(0.0, y1);
        let row = cpowf(gamma.denom(z), -kappa) * y1.powf(kappa / 2.0);
        let image = gamma.act(z);
        let mut inner = CompensatedSum::new();
        for j in 0..=steps {
            let y2 = (-half + j as f64 * h).exp();
            inner.add(cpowf(image + Complex64::new(0.0, y2), -kappa) * y2.powf(kappa / 2.0));
        }
        acc.add(inner.value() * row);
    }
    acc.value() * (h * h)
}

/// Raw cell index of the closed-form index `m` of each regular family.
fn raw_cell(family: OracleFamily, n: i64, m: i64) -> i64 {
    match family {
        OracleFamily::Reg1 => m,
        OracleFamily::Reg2 => -m - n,
        _ => -m,
    }
}

fn regular_oracle(family: OracleFamily, n: OddSquare, w: Weight, limits: &OracleLimits) -> Result<OracleValue, GeometricError> {
    let nn = n.get();
    let hi = match family {
        OracleFamily::Reg3 => (nn - 1) as u64,
        _ => limits.reg_m_max,
    };
    let mut matrices = Vec::new();
    for m in 1..=hi as i64 {
        matrices.extend(cosets::enumerate_cell_positive(nn, raw_cell(family, nn, m))?);
    }
    let k = w.kappa();
    let parts = collect_errors(
        matrices
            .par_iter()
            .map(|&g| Ok(t_power(g, w)? * regular_matrix_integral(g, k, limits)))
            .collect(),
    )?;
    let value = parts.into_iter().collect::<CompensatedSum>().value() * geometric_prefactor(n, w);
    Ok(OracleValue { value, terms: matrices.len(), m_range: (hi >= 1).then_some((1, hi)) })
}

/// Direct evaluation of one orbital integral family. Regular families are evaluated at `s = 0`
/// over the closed-form index range `1..=limits.reg_m_max` (all of it for the finite third family).
pub fn oracle_raw(family: OracleFamily, s: SpectralPoint, n: OddSquare, w: Weight, limits: &OracleLimits) -> Result<OracleValue, GeometricError> {
    match family {
        OracleFamily::Small => small_oracle(s, n, w, limits),
        OracleFamily::Dual => dual_oracle(s, n, w, limits),
        _ => {
            if s != SpectralPoint::ZERO {
                return Err(GeometricError::Region { point: s, region: "regular oracle (s = 0 only)" });
            }
            if !(limits.log_step > 0.0 && limits.log_step < FRAC_PI_2) {
                return Err(SpecfunError::Domain(format!("log step {} outside (0, pi/2)", limits.log_step)).into());
            }
            regular_oracle(family, n, w, limits)
        }
    }
}
