//! The reproducing kernel `sum_f (T_n f)(z) conj(f(z')) / ||f||^2 = n^{kappa-1} C_kappa^{-1}
//! h_n(z, -conj z')` with `h_n(z, z'') = sum_{gamma in G_4(n)} j_gamma(z)^{-2 kappa} (gamma z + z'')^{-kappa}`.

use nalgebra::DVector;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::basis::BasisEvaluator;
use super::hecke::hecke_matrix;
use super::moment::SpectralData;
use super::SpectralError;
use crate::arithmetic::{ext_gcd, gcd};
use crate::cosets::hecke_reps;
use crate::geometric::c_kappa;
use crate::multiplier::{j_gamma, j_general, Mat2};
use crate::params::OddSquare;
use crate::specfun::{lattice_sum, CompensatedSum};

/// Both sides of the kernel identity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KernelCheck {
    pub lhs: Complex64,
    pub rhs: Complex64,
    /// The right side with half the truncation radius.
    pub rhs_half_radius: Complex64,
    pub radius: f64,
    pub rel_err: f64,
}

/// Bottom rows `(c, d)`, `4 | c`, `gcd(c, d) = 1`, with `|cw + d| <= radius`, completed to
/// matrices of `Gamma0(4)`.
fn gamma0_4_rows(w: Complex64, radius: f64) -> Vec<Mat2> {
    let mut out = Vec::new();
    let c_max = (radius / w.im).floor() as i64;
    let mut c = -(c_max - c_max.rem_euclid(4));
    while c <= c_max {
        let cy = c as f64 * w.im;
        let span = (radius * radius - cy * cy).max(0.0).sqrt();
        let centre = -(c as f64) * w.re;
        let lo = (centre - span).ceil() as i64;
        let hi = (centre + span).floor() as i64;
        for d in lo..=hi {
            if gcd(c, d) != 1 {
                continue;
            }
            let (_, x, y) = ext_gcd(d, c);
            out.push(Mat2::new(x, -y, c, d));
        }
        c += 4;
    }
    out
}

/// `h_1(w, z'')` truncated to `|cw + d| <= radius`; each row carries the full translate sum.
pub fn h_one(w: Complex64, zpp: Complex64, kappa_twice: u32, radius: f64) -> Result<Complex64, SpectralError> {
    let k = kappa_twice as f64 / 2.0;
    let rows = gamma0_4_rows(w, radius);
    let parts: Result<Vec<Complex64>, SpectralError> = rows
        .par_iter()
        .map(|g| {
            let j = j_gamma(*g, w)?;
            Ok(j.powi(-(kappa_twice as i32)) * lattice_sum(1.0, g.act(w) + zpp, k, 0)?)
        })
        .collect();
    Ok(parts?.into_iter().collect::<CompensatedSum>().value())
}

/// `h_n(z, z'') = sum_tau j_tau(z)^{-2 kappa} h_1(tau z, z'')` over the Hecke representatives.
pub fn h_n(z: Complex64, zpp: Complex64, n: OddSquare, kappa_twice: u32, radius: f64) -> Result<Complex64, SpectralError> {
    let mut acc = CompensatedSum::new();
    for tau in hecke_reps(n.get())? {
        let j = j_general(tau, z)?;
        acc.add(j.powi(-(kappa_twice as i32)) * h_one(tau.act(z), zpp, kappa_twice, radius)?);
    }
    Ok(acc.value())
}

/// Compares `v(z)^T T_n G^{-1} conj(v(z'))` with the truncated kernel.
pub fn kernel_check(data: &SpectralData, z: Complex64, zp: Complex64, n: OddSquare, radius: f64) -> Result<KernelCheck, SpectralError> {
    if z.im < 0.5 || zp.im < 0.5 {
        return Err(SpectralError::Domain(format!("kernel points {z}, {zp} need Im >= 1/2")));
    }
    let ev = BasisEvaluator::new(&data.basis);
    let v = DVector::from_vec(ev.values(z)?);
    let vp = DVector::from_vec(ev.values(zp)?.into_iter().map(|x| x.conj()).collect());
    let t = match data.hecke.get(&n.get()) {
        Some(t) => t.clone(),
        None => hecke_matrix(n, &data.basis)?,
    };
    let ginv = data
        .gram
        .matrix
        .clone()
        .cholesky()
        .ok_or(SpectralError::Numerical { what: "Gram Cholesky", detail: "matrix is not positive definite".into() })?
        .inverse();
    let op = (t * ginv).map(|x| Complex64::new(x, 0.0));
    let lhs = (v.transpose() * op * vp)[(0, 0)];
    let twice = data.basis.weight.twice();
    let k = data.kappa();
    let scale = (n.get() as f64).powf(k - 1.0) / c_kappa(k);
    let zpp = -zp.conj();
    let rhs = scale * h_n(z, zpp, n, twice, radius)?;
    let rhs_half_radius = scale * h_n(z, zpp, n, twice, radius / 2.0)?;
    Ok(KernelCheck { lhs, rhs, rhs_half_radius, radius, rel_err: (lhs - rhs).norm() / rhs.norm() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::Weight;
    use crate::spectral::moment::SpectralConfig;

    #[test]
    fn rows_are_in_gamma0_4() {
        let w = Complex64::new(0.3, 0.9);
        let rows = gamma0_4_rows(w, 30.0);
        assert!(rows.iter().all(|g| g.det() == 1 && g.c % 4 == 0 && g.denom(w).norm() <= 30.0));
        let brute = (-40..=40i64)
            .flat_map(|c| (-40..=40i64).map(move |d| (4 * c, d)))
            .filter(|&(c, d)| gcd(c, d) == 1 && Complex64::new(c as f64 * w.re + d as f64, c as f64 * w.im).norm() <= 30.0)
            .count();
        assert_eq!(rows.len(), brute);
    }

    #[test]
    fn kernel_identity_weight_thirteen_halves() {
        let w = Weight::new(13).unwrap();
        let data = SpectralData::build(SpectralConfig::new(w, OddSquare::ONE)).unwrap();
        let z = Complex64::new(0.1, 1.0);
        let zp = Complex64::new(-0.2, 0.8);
        let check = kernel_check(&data, z, zp, OddSquare::ONE, 60.0).unwrap();
        assert!(check.rel_err < 1e-5, "{check:?}");
    }
}
