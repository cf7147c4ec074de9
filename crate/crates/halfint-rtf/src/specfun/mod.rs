//! Complex special functions and quadrature primitives.

use num_complex::Complex64;
use thiserror::Error;

pub mod gamma;
pub mod hyper;
pub mod lattice;
pub mod legendre;
pub mod quad;
pub mod zeta;

pub use gamma::{beta, digamma, gamma_c, ln_gamma, rgamma};
pub use hyper::{hyp2f1, hyp2f1_cut, CutSide};
pub use lattice::{j1j2_closed, j1j2_quadrature, lattice_direct, lattice_sum, lipschitz_sides};
pub use legendre::{ferrers_p, legendre_q, legendre_q_bridge, legendre_q_integral, QBranch};
pub use quad::{contour_circle, contour_circle_2d, gauss_legendre, tanh_sinh, trapezoid_line};
pub use zeta::{dirichlet_l, hurwitz_zeta, zeta, zeta_regular, ZetaMode};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpecfunError {
    #[error("pole at {0}")]
    Pole(Complex64),
    #[error("argument outside the supported domain: {0}")]
    Domain(String),
    #[error("{what} failed to converge ({detail})")]
    NoConvergence { what: &'static str, detail: String },
}

/// Accuracy targets shared by series and quadrature routines.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrecisionPolicy {
    pub target_rel: f64,
    pub max_terms: usize,
    pub nodes: usize,
}

impl Default for PrecisionPolicy {
    fn default() -> Self {
        PrecisionPolicy { target_rel: 1e-12, max_terms: 100_000, nodes: 512 }
    }
}

impl PrecisionPolicy {
    pub const FLOOR: f64 = 1e-14;

    pub fn validated(self) -> Result<Self, SpecfunError> {
        if self.target_rel < Self::FLOOR {
            return Err(SpecfunError::Domain(format!("target {} below {}", self.target_rel, Self::FLOOR)));
        }
        Ok(self)
    }
}

/// Principal power `z^a = exp(a log z)`.
pub fn cpow(z: Complex64, a: Complex64) -> Complex64 {
    (a * z.ln()).exp()
}

/// Principal power with a real exponent.
pub fn cpowf(z: Complex64, a: f64) -> Complex64 {
    (z.ln() * a).exp()
}

/// Principal `i^a = exp(i pi a / 2)`.
pub fn i_pow(a: Complex64) -> Complex64 {
    (Complex64::new(0.0, std::f64::consts::FRAC_PI_2) * a).exp()
}

/// Neumaier-compensated complex accumulator.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    re: (f64, f64),
    im: (f64, f64),
}

fn neumaier(acc: &mut (f64, f64), x: f64) {
    let t = acc.0 + x;
    if acc.0.abs() >= x.abs() {
        acc.1 += (acc.0 - t) + x;
    } else {
        acc.1 += (x - t) + acc.0;
    }
    acc.0 = t;
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, z: Complex64) {
        neumaier(&mut self.re, z.re);
        neumaier(&mut self.im, z.im);
    }

    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re.0 + self.re.1, self.im.0 + self.im.1)
    }
}

impl std::iter::FromIterator<Complex64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = Complex64>>(iter: I) -> Self {
        let mut s = CompensatedSum::new();
        for z in iter {
            s.add(z);
        }
        s
    }
}

#[cfg(test)]
pub(crate) fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// `|a - b| / max(|b|, 1e-300)`.
pub fn rel_err(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm().max(f64::MIN_POSITIVE)
}

/// Even-index Bernoulli numbers `B_2, B_4, ..., B_28`.
pub(crate) const BERNOULLI_EVEN: [f64; 14] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
    8553103.0 / 6.0,
    -23749461029.0 / 870.0,
];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compensated_sum_beats_naive() {
        let mut s = CompensatedSum::new();
        s.add(c(1e16, 0.0));
        for _ in 0..1000 {
            s.add(c(1.0, -1.0));
        }
        s.add(c(-1e16, 0.0));
        assert_eq!(s.value(), c(1000.0, -1000.0));
    }

    #[test]
    fn policy_floor() {
        assert!(PrecisionPolicy::default().validated().is_ok());
        assert!(PrecisionPolicy { target_rel: 1e-16, ..Default::default() }.validated().is_err());
    }

    #[test]
    fn principal_powers() {
        let z = c(-1.0, 1e-300);
        assert!((cpowf(z, 0.5) - c(0.0, 1.0)).norm() < 1e-15);
        assert!((i_pow(c(4.5, 0.0)) - cpowf(c(0.0, 1.0), 4.5)).norm() < 1e-15);
    }
}
