//! `L(1/2 + s, f)` for `f = sum c(n) e(nz)`, normalized so that
//! `L(1/2 + s, f) = (2 pi)^sigma / Gamma(sigma) int_0^inf f(iy) y^{sigma - 1} dy`, `sigma = s + kappa/2`.

use num_complex::Complex64;
use std::f64::consts::PI;

use super::basis::{BasisEvaluator, BasisSet};
use super::qexp::{evaluate_form, QExpansion};
use super::SpectralError;
use crate::specfun::{cpow, gamma_c, tanh_sinh};

/// The imaginary axis is split at `y = 1/2`, the fixed point of `y -> 1/(4y)`.
pub const L_SPLIT: f64 = 0.5;
pub const L_QUAD_TOL: f64 = 1e-13;

fn cutoff(sigma: f64) -> f64 {
    12.0 + sigma.abs()
}

fn normalizer(sigma: Complex64) -> Result<Complex64, SpectralError> {
    Ok(cpow(Complex64::new(2.0 * PI, 0.0), sigma) / gamma_c(sigma)?)
}

/// The value from a form and its expansion `g` at 0: the lower half of the axis becomes
/// `int_{1/2}^inf g(it) (2t)^kappa (4t)^{-sigma} dt / t`.
pub fn central_l(f: &QExpansion, g: &QExpansion, s: Complex64) -> Result<Complex64, SpectralError> {
    let k = f.kappa();
    let sigma = s + k / 2.0;
    let top = cutoff(sigma.re);
    let upper = tanh_sinh(
        |y| evaluate_form(f, Complex64::new(0.0, y)).map_or(Complex64::new(f64::NAN, 0.0), |v| v * cpow(Complex64::new(y, 0.0), sigma - 1.0)),
        L_SPLIT,
        top,
        L_QUAD_TOL,
    )?;
    let lower = tanh_sinh(
        |t| {
            evaluate_form(g, Complex64::new(0.0, t)).map_or(Complex64::new(f64::NAN, 0.0), |v| {
                v * (2.0 * t).powf(k) * cpow(Complex64::new(4.0 * t, 0.0), -sigma) / t
            })
        },
        L_SPLIT,
        top,
        L_QUAD_TOL,
    )?;
    let total = upper + lower;
    if !total.re.is_finite() || !total.im.is_finite() {
        return Err(SpectralError::Numerical { what: "L-value quadrature", detail: "non-finite integrand".into() });
    }
    Ok(total * normalizer(sigma)?)
}

/// L-values of all basis members.
pub fn basis_l_values(basis: &BasisSet, s: Complex64) -> Result<Vec<Complex64>, SpectralError> {
    basis.members.iter().zip(&basis.fricke).map(|(f, g)| central_l(f, g, s)).collect()
}

/// Oracle: the Mellin integral along the whole axis down to `y_min`, using the expansion at
/// infinity only.
pub fn l_direct(basis: &BasisSet, s: Complex64, y_min: f64) -> Result<Vec<Complex64>, SpectralError> {
    let ev = BasisEvaluator::new(basis);
    let sigma = s + basis.weight.kappa() / 2.0;
    let top = cutoff(sigma.re);
    let norm = normalizer(sigma)?;
    (0..basis.dim())
        .map(|i| {
            let v = tanh_sinh(
                |y| {
                    ev.direct_values(Complex64::new(0.0, y))
                        .map_or(Complex64::new(f64::NAN, 0.0), |v| v[i] * cpow(Complex64::new(y, 0.0), sigma - 1.0))
                },
                y_min,
                top,
                L_QUAD_TOL,
            )?;
            Ok(v * norm)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::Weight;
    use crate::spectral::basis::basis_cuspforms;
    use crate::specfun::rel_err;

    fn w(x: u32) -> Weight {
        Weight::new(x).unwrap()
    }

    #[test]
    fn split_matches_direct_axis_integral() {
        for x in [9u32, 13] {
            let b = basis_cuspforms(w(x), 1200).unwrap();
            for s in [Complex64::new(0.0, 0.0), Complex64::new(0.3, -0.2)] {
                let split = basis_l_values(&b, s).unwrap();
                let direct = l_direct(&b, s, 0.02).unwrap();
                for (a, d) in split.iter().zip(&direct) {
                    assert!(rel_err(*a, *d) < 1e-9, "w={x} s={s}: {a} vs {d}");
                }
            }
        }
    }

    #[test]
    fn real_at_real_points_and_linear() {
        let b = basis_cuspforms(w(13), 600).unwrap();
        let l = basis_l_values(&b, Complex64::new(0.0, 0.0)).unwrap();
        assert!(l.iter().all(|v| v.im.abs() < 1e-12 * v.norm()));
        let x = [2.0, -0.5];
        let combined = central_l(&b.combine(&x), &b.combine_fricke(&x), Complex64::new(0.0, 0.0)).unwrap();
        assert!(rel_err(combined, l[0] * x[0] + l[1] * x[1]) < 1e-12);
    }

    #[test]
    fn dirichlet_series_far_right() {
        let b = basis_cuspforms(w(9), 800).unwrap();
        let s = Complex64::new(6.0, 0.0);
        let got = basis_l_values(&b, s).unwrap()[0];
        let k = 4.5;
        let series: f64 = (1..800).map(|n| b.members[0].coeff(n) * (n as f64).powf(-(k - 1.0) / 2.0 - 0.5 - 6.0)).sum();
        assert!(rel_err(got, Complex64::new(series, 0.0)) < 1e-9, "{got} vs {series}");
    }
}
