//! Small-cell and dual-cell orbital integrals, their pole/entire splits and the
//! contour-regularized singular part at the removable point.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use super::{coprime_pairs, i_kappa_c_kappa, rpow, GeometricError, SpectralPoint};
use crate::arithmetic;
use crate::multiplier::FourthRoot;
use crate::params::{OddSquare, Weight};
use crate::specfun::{contour_circle_2d, digamma, dirichlet_l, gamma_c, zeta, PrecisionPolicy};

/// Euler's constant.
const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Pole carrying part (`g` a square) and entire part (`g` not a square).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SplitValue {
    pub square: Complex64,
    pub nonsquare: Complex64,
}

impl SplitValue {
    pub fn total(&self) -> Complex64 {
        self.square + self.nonsquare
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Side {
    Small,
    Dual,
}

/// One summand `g^2 ad = n` of the small or dual divisor sum, without Gamma factors.
fn divisor_term(side: Side, s: SpectralPoint, w: Weight, g: u64, a: u64, d: u64) -> Result<Complex64, GeometricError> {
    let parts = arithmetic::square_parts(g as i64)?;
    let sigma = s.sum();
    let (l_arg, two_sided) = match side {
        Side::Small => (1.0 + sigma, sigma),
        Side::Dual => (1.0 - sigma, -sigma),
    };
    let l = if parts.is_square() { zeta(l_arg)? } else { dirichlet_l(l_arg, parts.g_star as i64)? };
    let unit = arithmetic::eps(g as i64)?.pow(w.twice() as i64 + 1) * FourthRoot::from_sign(arithmetic::jacobi(-1, g as i64)?);
    let mut euler = Complex64::new(1.0, 0.0);
    for p in arithmetic::factorize(parts.g0 as i64)?.primes() {
        let chi = f64::from(arithmetic::jacobi(p as i64, parts.g_star as i64)?);
        euler *= Complex64::new(1.0, 0.0) - rpow(p as f64, two_sided) * chi;
    }
    let gs = parts.g_star as f64;
    let (ad_factor, g_factor) = match side {
        Side::Small => (rpow(a as f64, -s.s1) * rpow(d as f64, -s.s2), rpow(g as f64, -sigma)),
        Side::Dual => (rpow(d as f64, s.s1) * rpow(a as f64, s.s2), rpow(g as f64, sigma)),
    };
    Ok(l * rpow(gs, 0.5 + two_sided) * unit.to_complex() * ad_factor * g_factor * euler)
}

fn divisor_sum(side: Side, s: SpectralPoint, n: OddSquare, w: Weight, nonsquare_only: bool) -> Result<SplitValue, GeometricError> {
    let n = n.get() as u64;
    let mut split = SplitValue { square: Complex64::new(0.0, 0.0), nonsquare: Complex64::new(0.0, 0.0) };
    for g in arithmetic::divisors(arithmetic::isqrt(n)) {
        if n % (g * g) != 0 {
            continue;
        }
        let square = arithmetic::is_square(g as i64);
        if square && nonsquare_only {
            continue;
        }
        for (a, d) in coprime_pairs(n / (g * g)) {
            let t = divisor_term(side, s, w, g, a, d)?;
            if square {
                split.square += t;
            } else {
                split.nonsquare += t;
            }
        }
    }
    Ok(split)
}

fn small_prefactor(s: SpectralPoint, n: OddSquare, w: Weight) -> Result<Complex64, GeometricError> {
    let k = w.kappa();
    let gam = gamma_c(s.s1 + k / 2.0)? * gamma_c(s.s2 + k / 2.0)?;
    Ok(gam * 2.0 * (n.get() as f64).powf(k / 2.0 - 1.0) / (i_kappa_c_kappa(k) * rpow(2.0 * PI, s.sum()) * gamma_c(Complex64::new(k, 0.0))?))
}

fn dual_prefactor(s: SpectralPoint, n: OddSquare, w: Weight) -> Result<Complex64, GeometricError> {
    let k = w.kappa();
    let gam = gamma_c(-s.s1 + k / 2.0)? * gamma_c(-s.s2 + k / 2.0)?;
    Ok(gam * rpow(2.0 * PI / 4.0, s.sum()) * 2.0 * (n.get() as f64).powf(k / 2.0 - 1.0)
        / (i_kappa_c_kappa(k) * gamma_c(Complex64::new(k, 0.0))?))
}

/// Small-cell orbital integral split into square and nonsquare `g`.
pub fn j_small_split(s: SpectralPoint, n: OddSquare, w: Weight) -> Result<SplitValue, GeometricError> {
    let pref = small_prefactor(s, n, w)?;
    let sum = divisor_sum(Side::Small, s, n, w, false)?;
    Ok(SplitValue { square: sum.square * pref, nonsquare: sum.nonsquare * pref })
}

/// Small-cell orbital integral, meromorphically continued.
pub fn j_small(s: SpectralPoint, n: OddSquare, w: Weight) -> Result<Complex64, GeometricError> {
    Ok(j_small_split(s, n, w)?.total())
}

/// Dual-cell orbital integral split into square and nonsquare `g`.
pub fn j_dual_split(s: SpectralPoint, n: OddSquare, w: Weight) -> Result<SplitValue, GeometricError> {
    let pref = dual_prefactor(s, n, w)?;
    let sum = divisor_sum(Side::Dual, s, n, w, false)?;
    Ok(SplitValue { square: sum.square * pref, nonsquare: sum.nonsquare * pref })
}

/// Dual-cell orbital integral, meromorphically continued.
pub fn j_dual(s: SpectralPoint, n: OddSquare, w: Weight) -> Result<Complex64, GeometricError> {
    Ok(j_dual_split(s, n, w)?.total())
}

/// Common factor `2 n^{kappa/2 - 1} / (i^kappa C_kappa 2^{s1+s2} Gamma(kappa))`.
pub fn sing_prefactor(s: SpectralPoint, n: OddSquare, w: Weight) -> Result<Complex64, GeometricError> {
    let k = w.kappa();
    Ok(Complex64::new(2.0 * (n.get() as f64).powf(k / 2.0 - 1.0), 0.0)
        / (i_kappa_c_kappa(k) * rpow(2.0, s.sum()) * gamma_c(Complex64::new(k, 0.0))?))
}

/// Divisor part of `K`: sum over `g^4 ad = n`, `gcd(a, d) = 1`.
fn k_divisor_sum(s: SpectralPoint, n: u64) -> Result<Complex64, GeometricError> {
    let sigma = s.sum();
    let mut acc = Complex64::new(0.0, 0.0);
    for g in arithmetic::divisors(arithmetic::isqrt(arithmetic::isqrt(n))) {
        let g4 = g.pow(4);
        if n % g4 != 0 {
            continue;
        }
        let mut euler = Complex64::new(1.0, 0.0);
        for p in arithmetic::factorize(g as i64)?.primes() {
            euler *= Complex64::new(1.0, 0.0) - rpow(p as f64, sigma);
        }
        for (a, d) in coprime_pairs(n / g4) {
            acc += rpow(a as f64, -s.s1) * rpow(d as f64, -s.s2) * rpow(g as f64, -2.0 * sigma) * euler;
        }
    }
    Ok(acc)
}

/// `K(s1, s2; n)`, with a pole on `s1 + s2 = 0`.
pub fn k_fn(s: SpectralPoint, n: OddSquare, w: Weight) -> Result<Complex64, GeometricError> {
    let k = w.kappa();
    let sigma = s.sum();
    let gam = gamma_c(s.s1 + k / 2.0)? * gamma_c(s.s2 + k / 2.0)?;
    Ok(gam * zeta(1.0 + sigma)? * rpow(PI, -sigma) * k_divisor_sum(s, n.get() as u64)?)
}

/// `M(s1, s2; n)`: the nonsquare-`g` part of the small-cell divisor sum with its Gamma factors.
pub fn m_fn(s: SpectralPoint, n: OddSquare, w: Weight) -> Result<Complex64, GeometricError> {
    let k = w.kappa();
    let gam = gamma_c(s.s1 + k / 2.0)? * gamma_c(s.s2 + k / 2.0)?;
    Ok(gam * rpow(PI, -s.sum()) * divisor_sum(Side::Small, s, n, w, true)?.nonsquare)
}

/// Singular orbital integral for `|s_i| < 1`, including `s = 0`, through the double contour over
/// `|z1| = 3/2`, `|z2| = 1`. Unequal radii keep the nodes off the removable line `z1 + z2 = 0`.
pub fn j_sing(s: SpectralPoint, n: OddSquare, w: Weight, nodes: usize) -> Result<Complex64, GeometricError> {
    if !(s.s1.norm() < 1.0 && s.s2.norm() < 1.0) {
        return Err(GeometricError::Region { point: s, region: "inside-contour" });
    }
    let pref = sing_prefactor(s, n, w)?;
    let entire = pref * (m_fn(s, n, w)? + m_fn(s.neg(), n, w)?);
    let (a, b) = (s.s1, s.s2);
    let policy = PrecisionPolicy { nodes, ..PrecisionPolicy::default() };
    let integral = contour_circle_2d(
        |z1, z2| {
            let num = (z1 * z1 - z2 * z2).powu(2) * (z1 * z2 + a * b);
            let den = (z1 - a) * (z1 + a) * (z1 - b) * (z1 + b) * (z2 - a) * (z2 + a) * (z2 - b) * (z2 + b);
            let kz = k_fn(SpectralPoint::new(z1, z2), n, w).map_err(|e| match e {
                GeometricError::Specfun(inner) => inner,
                other => crate::specfun::SpecfunError::Domain(other.to_string()),
            })?;
            Ok(num / den * kz)
        },
        1.5,
        1.0,
        &policy,
    )?;
    let two_pi_i = Complex64::new(0.0, 2.0 * PI);
    Ok(entire - pref * integral / (two_pi_i * two_pi_i))
}

/// Residue evaluation of `J_Sing(0, 1)`:
/// `4 Gamma(kappa/2)^2 (psi(kappa/2) + gamma - log pi) / (i^kappa C_kappa Gamma(kappa))`.
pub fn j_sing_residue_n1(w: Weight) -> Result<Complex64, GeometricError> {
    let k = Complex64::new(w.kappa(), 0.0);
    let g = gamma_c(k / 2.0)?;
    let bracket = digamma(k / 2.0)? + EULER_GAMMA - PI.ln();
    Ok(g * g * bracket * 4.0 / (i_kappa_c_kappa(w.kappa()) * gamma_c(k)?))
}
