//! Orbital integrals of the geometric side: the singular cells in closed form,
//! the regular cells as hypergeometric m-sums, and direct-quadrature oracles.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use thiserror::Error;

use crate::arithmetic::ArithmeticError;
use crate::cosets::CosetError;
use crate::multiplier::MultiplierError;
use crate::params::{OddSquare, Weight};
use crate::specfun::{i_pow, SpecfunError};

pub mod oracle;
pub mod regular;
pub mod singular;

pub use oracle::{oracle_raw, OracleFamily, OracleLimits, OracleValue};
pub use regular::{j_reg, j_reg_component, j_reg_partial, RegComponent, RegValue};
pub use singular::{j_dual, j_dual_split, j_sing, j_sing_residue_n1, j_small, j_small_split, k_fn, m_fn, SplitValue};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeometricError {
    #[error(transparent)]
    Specfun(#[from] SpecfunError),
    #[error(transparent)]
    Multiplier(#[from] MultiplierError),
    #[error(transparent)]
    Coset(#[from] CosetError),
    #[error(transparent)]
    Arithmetic(#[from] ArithmeticError),
    #[error("spectral point {point} is outside the {region} region")]
    Region { point: SpectralPoint, region: &'static str },
    #[error("tail estimate {estimate:e} exceeds tolerance {tol:e}")]
    TailTooLarge { estimate: f64, tol: f64 },
    #[error("invalid configuration: {0}")]
    Config(String),
}

/// The pair `s = (s1, s2)` of trace formula parameters.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct SpectralPoint {
    pub s1: Complex64,
    pub s2: Complex64,
}

impl std::fmt::Display for SpectralPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {})", self.s1, self.s2)
    }
}

impl SpectralPoint {
    pub const ZERO: SpectralPoint = SpectralPoint { s1: Complex64::new(0.0, 0.0), s2: Complex64::new(0.0, 0.0) };

    pub fn new(s1: Complex64, s2: Complex64) -> Self {
        SpectralPoint { s1, s2 }
    }

    pub fn real(s1: f64, s2: f64) -> Self {
        SpectralPoint::new(Complex64::new(s1, 0.0), Complex64::new(s2, 0.0))
    }

    pub fn sum(&self) -> Complex64 {
        self.s1 + self.s2
    }

    pub fn neg(&self) -> Self {
        SpectralPoint::new(-self.s1, -self.s2)
    }

    pub fn swap(&self) -> Self {
        SpectralPoint::new(self.s2, self.s1)
    }

    /// `Re(s1 + s2) > 0`, `Re s_i > -kappa/2`.
    pub fn in_small_region(&self, kappa: f64) -> bool {
        self.sum().re > 0.0 && self.s1.re > -kappa / 2.0 && self.s2.re > -kappa / 2.0
    }

    /// `Re(s1 + s2) > 1`, `1 - kappa/2 < Re s1 < kappa/2`, `Re s2 < kappa/2`.
    pub fn in_dual_region(&self, kappa: f64) -> bool {
        let h = kappa / 2.0;
        self.sum().re > 1.0 && self.s1.re > 1.0 - h && self.s1.re < h && self.s2.re < h
    }

    /// `|Re s_i| < kappa/2 - 1`.
    pub fn in_regular_region(&self, kappa: f64) -> bool {
        let h = kappa / 2.0 - 1.0;
        self.s1.re.abs() < h && self.s2.re.abs() < h
    }
}

/// Settings shared by the geometric evaluations.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GeomConfig {
    pub weight: Weight,
    pub n: OddSquare,
    /// Truncation of the infinite regular m-sums.
    pub m_max: u64,
    /// Starting node count of the double contour, doubled until stable.
    pub contour_nodes: usize,
    /// Bound on the tail correction relative to the completed regular sum.
    pub tail_tol: f64,
}

impl GeomConfig {
    /// Floor on the truncation independent of `n` and `kappa`.
    pub const M_MAX_FLOOR: u64 = 16384;

    pub fn new(weight: Weight, n: OddSquare) -> Self {
        let m_max = (16 * n.get() as u64).max((64.0 * weight.kappa()).ceil() as u64).max(Self::M_MAX_FLOOR);
        GeomConfig { weight, n, m_max, contour_nodes: 64, tail_tol: 1e-3 }
    }

    pub fn kappa(&self) -> f64 {
        self.weight.kappa()
    }

    pub fn validated(self) -> Result<Self, GeometricError> {
        if self.m_max < 16 * self.n.get() as u64 {
            return Err(GeometricError::Config(format!("m_max {} below 16n = {}", self.m_max, 16 * self.n.get())));
        }
        if self.contour_nodes < 8 {
            return Err(GeometricError::Config(format!("contour nodes {} below 8", self.contour_nodes)));
        }
        Ok(self)
    }
}

/// `C_kappa = (-i)^kappa pi / (2^{kappa - 3} (kappa - 1))` with the principal power.
pub fn c_kappa(kappa: f64) -> Complex64 {
    let minus_i_pow = (Complex64::new(0.0, -PI / 2.0) * kappa).exp();
    minus_i_pow * (PI / (2f64.powf(kappa - 3.0) * (kappa - 1.0)))
}

/// `i^kappa C_kappa`, which is real and positive.
pub fn i_kappa_c_kappa(kappa: f64) -> Complex64 {
    i_pow(Complex64::new(kappa, 0.0)) * c_kappa(kappa)
}

/// Positive real `x^s`.
pub(crate) fn rpow(x: f64, s: Complex64) -> Complex64 {
    (s * x.ln()).exp()
}

/// Coprime factorizations `ad = m` with `a, d >= 1`.
pub(crate) fn coprime_pairs(m: u64) -> Vec<(u64, u64)> {
    crate::arithmetic::divisors(m)
        .into_iter()
        .filter(|&a| crate::arithmetic::gcd(a as i64, (m / a) as i64) == 1)
        .map(|a| (a, m / a))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn c_kappa_values() {
        for w in [9u32, 11, 13, 21] {
            let kappa = w as f64 / 2.0;
            let c = c_kappa(kappa);
            assert!((c.norm() - PI / (2f64.powf(kappa - 3.0) * (kappa - 1.0))).abs() < 1e-15);
            let ic = i_kappa_c_kappa(kappa);
            assert!(ic.im.abs() < 1e-15 && ic.re > 0.0);
        }
        let c = c_kappa(4.5);
        let expect = (Complex64::new(0.0, -PI / 2.0) * 4.5).exp();
        assert!((c / c.norm() - expect).norm() < 1e-15);
        let c13 = c_kappa(6.5);
        let modulus = PI / (2f64.powf(3.5) * 5.5);
        let direct = Complex64::new((-13.0 * PI / 4.0).cos(), (-13.0 * PI / 4.0).sin()) * modulus;
        assert!((c13 - direct).norm() < 1e-15);
    }

    #[test]
    fn regions() {
        let s = SpectralPoint::real(0.6, 0.7);
        assert!(s.in_small_region(6.5) && s.in_dual_region(6.5) && s.in_regular_region(6.5));
        assert!(!SpectralPoint::real(0.3, 0.4).in_dual_region(6.5));
        assert!(!SpectralPoint::real(-0.3, 0.2).in_small_region(6.5));
        assert!(!SpectralPoint::real(2.3, 0.0).in_regular_region(6.5));
    }

    #[test]
    fn coprime_pair_lists() {
        assert_eq!(coprime_pairs(1), vec![(1, 1)]);
        assert_eq!(coprime_pairs(9), vec![(1, 9), (9, 1)]);
        assert_eq!(coprime_pairs(225), vec![(1, 225), (9, 25), (25, 9), (225, 1)]);
    }

    #[test]
    fn config_defaults() {
        let cfg = GeomConfig::new(Weight::new(13).unwrap(), OddSquare::new(9).unwrap());
        assert_eq!(cfg.m_max, GeomConfig::M_MAX_FLOOR);
        let bad = GeomConfig { m_max: 10, ..cfg };
        assert!(bad.validated().is_err());
    }
}
