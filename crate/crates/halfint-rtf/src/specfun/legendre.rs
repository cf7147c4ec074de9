//! Legendre functions of the second kind `Q_nu` off and on the cut `[-1, 1]`.

use num_complex::Complex64;
use std::f64::consts::PI;

use super::{cpowf, gamma_c, hyp2f1, tanh_sinh, SpecfunError};

/// Evaluation mode for `Q_nu(x)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum QBranch {
    /// `x > 1`, the real-analytic branch.
    RealAxisGt1,
    /// `-1 < x < 1`, mean of the two boundary values (the Ferrers function).
    CutMean,
    /// `-1 < x < 1`, boundary value from the upper half-plane.
    CutAbove,
    /// `-1 < x < 1`, boundary value from the lower half-plane.
    CutBelow,
}

const GAP: f64 = 1e-6;

fn real(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// Ferrers function of the first kind `P_nu(x) = F(-nu, nu + 1; 1; (1 - x)/2)`.
pub fn ferrers_p(nu: f64, x: f64) -> Result<Complex64, SpecfunError> {
    if !(x > -1.0 && x <= 1.0) || 1.0 + x < GAP {
        return Err(SpecfunError::Domain(format!("Ferrers P needs -1 < x <= 1, got {x}")));
    }
    hyp2f1(real(-nu), real(nu + 1.0), real(1.0), (1.0 - x) / 2.0)
}

fn ferrers_q(nu: f64, x: f64) -> Result<Complex64, SpecfunError> {
    let s = (nu * PI).sin();
    if s.abs() < 1e-12 {
        return Err(SpecfunError::Domain(format!("integer degree {nu} not supported on the cut")));
    }
    Ok((ferrers_p(nu, x)? * (nu * PI).cos() - ferrers_p(nu, -x)?) * (PI / (2.0 * s)))
}

/// `Q_nu(x)` for `x > 1` from the hypergeometric series in `1/x^2`.
pub fn legendre_q_bridge(nu: f64, x: f64) -> Result<Complex64, SpecfunError> {
    if !(x > 1.0 + GAP) {
        return Err(SpecfunError::Domain(format!("bridge needs x > 1, got {x}")));
    }
    let pref = PI.sqrt() * gamma_c(real(nu + 1.0))? / (gamma_c(real(nu + 1.5))? * (2.0 * x).powf(nu + 1.0));
    Ok(hyp2f1(real((nu + 1.0) / 2.0), real((nu + 2.0) / 2.0), real(nu + 1.5), 1.0 / (x * x))? * pref)
}

/// `Q_nu(z) = 2^{-nu-1} int_{-1}^{1} (1 - t^2)^nu (z - t)^{-nu-1} dt` for `nu > -1`,
/// `z` off the segment `[-1, 1]`.
pub fn legendre_q_integral(nu: f64, z: Complex64) -> Result<Complex64, SpecfunError> {
    if nu <= -1.0 {
        return Err(SpecfunError::Domain(format!("integral representation needs nu > -1, got {nu}")));
    }
    if z.im == 0.0 && z.re.abs() <= 1.0 + GAP {
        return Err(SpecfunError::Domain(format!("z={z} lies on the cut")));
    }
    let f = |t: f64| cpowf(z - t, -nu - 1.0) * (1.0 - t * t).max(0.0).powf(nu);
    let total = if z.re.abs() < 1.0 && z.im.abs() < 0.5 {
        tanh_sinh(f, -1.0, z.re, 1e-13)? + tanh_sinh(f, z.re, 1.0, 1e-13)?
    } else {
        tanh_sinh(f, -1.0, 1.0, 1e-14)?
    };
    Ok(total * 2f64.powf(-nu - 1.0))
}

/// `Q_nu(x)` with the requested branch.
pub fn legendre_q(nu: f64, x: f64, branch: QBranch) -> Result<Complex64, SpecfunError> {
    if nu <= 0.0 {
        return Err(SpecfunError::Domain(format!("degree must be positive, got {nu}")));
    }
    match branch {
        QBranch::RealAxisGt1 => legendre_q_bridge(nu, x),
        QBranch::CutMean | QBranch::CutAbove | QBranch::CutBelow => {
            if !(x.abs() < 1.0 - GAP) {
                return Err(SpecfunError::Domain(format!("cut evaluation needs |x| < 1, got {x}")));
            }
            let q = ferrers_q(nu, x)?;
            let jump = ferrers_p(nu, x)? * Complex64::new(0.0, PI / 2.0);
            Ok(match branch {
                QBranch::CutAbove => q - jump,
                QBranch::CutBelow => q + jump,
                _ => q,
            })
        }
    }
}
