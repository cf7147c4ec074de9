//! Hecke operators `T_n` for odd square `n`, normalized so that
//! `T_n f(z) = n^{kappa-1} sum_j j_{gamma_j}(z)^{-2 kappa} f(gamma_j z)`.

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::basis::BasisSet;
use super::qexp::{evaluate_form, QExpansion};
use super::SpectralError;
use crate::arithmetic::{self, e_frac};
use crate::cosets::hecke_reps;
use crate::multiplier::{j_general, t_upper_closed};
use crate::params::OddSquare;
use crate::specfun::CompensatedSum;

fn odd_prime(p: u64) -> Result<(), SpectralError> {
    if p % 2 == 1 && arithmetic::is_prime(p) {
        Ok(())
    } else {
        Err(SpectralError::Domain(format!("{p} is not an odd prime")))
    }
}

/// Coefficients `b(n)`, `n <= N / p^2`, of `T_{p^2} f` by
/// `b(n) = c(p^2 n) + ((-1)^lambda n / p) p^{lambda-1} c(n) + p^{2 lambda - 1} c(n / p^2)`.
pub fn hecke_coefficient_rule(f: &QExpansion, p: u64) -> Result<Vec<f64>, SpectralError> {
    odd_prime(p)?;
    let lambda = (f.twice_weight - 1) / 2;
    let sign: i64 = if lambda % 2 == 0 { 1 } else { -1 };
    let p2 = (p * p) as usize;
    let top = f.truncation() / p2;
    if top == 0 {
        return Err(SpectralError::Domain(format!("truncation {} too short for T_{p2}", f.truncation())));
    }
    let pf = p as f64;
    let mid = pf.powi(lambda as i32 - 1);
    let low = pf.powi(2 * lambda as i32 - 1);
    (0..=top)
        .map(|n| {
            let chi = arithmetic::jacobi(sign * n as i64, p as i64)? as f64;
            let chi = if n as u64 % p == 0 { 0.0 } else { chi };
            let small = if n % p2 == 0 { f.coeff(n / p2) } else { 0.0 };
            Ok(f.coeff(p2 * n) + chi * mid * f.coeff(n) + low * small)
        })
        .collect()
}

/// Coefficients `b(N)`, `N <= N_f / n`, of `T_n f` from the coset representatives:
/// `b(N) = n^{kappa-1} sum_{ad = n} d^{-kappa} sum_m t^{-2 kappa} e(km/d) c(k)`, `k = N d / a`.
pub fn hecke_coset_coefficients(f: &QExpansion, n: OddSquare) -> Result<Vec<f64>, SpectralError> {
    let nn = n.get();
    let top = f.truncation() / nn as usize;
    let k = f.kappa();
    let reps = hecke_reps(nn)?;
    let mut units = Vec::with_capacity(reps.len());
    for r in &reps {
        units.push(t_upper_closed(r.a, r.d, r.b)?.pow(-(f.twice_weight as i64)).to_complex());
    }
    let norm = (nn as f64).powf(k - 1.0);
    let mut out = Vec::with_capacity(top + 1);
    for big in 0..=top {
        let mut acc = CompensatedSum::new();
        let mut scale: f64 = 0.0;
        for (r, u) in reps.iter().zip(&units) {
            let num = big as i64 * r.d;
            if num % r.a != 0 {
                continue;
            }
            let idx = (num / r.a) as usize;
            let term = *u * e_frac(idx as i64 * r.b, r.d) * f.coeff(idx) * (r.d as f64).powf(-k);
            scale = scale.max(term.norm());
            acc.add(term);
        }
        let v = acc.value() * norm;
        if v.im.abs() > 1e-9 * scale.max(f64::MIN_POSITIVE) * norm * reps.len() as f64 {
            return Err(SpectralError::Numerical { what: "coset coefficients", detail: format!("b({big}) = {v} is not real") });
        }
        out.push(v.re);
    }
    Ok(out)
}

/// `T_n f(z)` summed over the right coset representatives.
pub fn hecke_coset_apply(f: &QExpansion, n: OddSquare, z: Complex64) -> Result<Complex64, SpectralError> {
    let nn = n.get();
    let norm = (nn as f64).powf(f.kappa() - 1.0);
    let mut acc = CompensatedSum::new();
    for g in hecke_reps(nn)? {
        let j = j_general(g, z)?;
        acc.add(j.powi(-(f.twice_weight as i32)) * evaluate_form(f, g.act(z))?);
    }
    Ok(acc.value() * norm)
}

/// Matrix of `T_n` in the basis: column `i` holds the coordinates of `T_n E_i`.
/// `n = p^2` uses the coefficient rule, other `n > 1` the coset coefficients.
pub fn hecke_matrix(n: OddSquare, basis: &BasisSet) -> Result<DMatrix<f64>, SpectralError> {
    let d = basis.dim();
    if n.get() == 1 {
        return Ok(DMatrix::identity(d, d));
    }
    let root = n.root() as u64;
    let prime = arithmetic::is_prime(root);
    let mut m = DMatrix::zeros(d, d);
    for (i, f) in basis.members.iter().enumerate() {
        let b = if prime { hecke_coefficient_rule(f, root)? } else { hecke_coset_coefficients(f, n)? };
        if b.len() <= d + 2 {
            return Err(SpectralError::Domain(format!(
                "truncation {} too short for T_{} on a {d}-dimensional space",
                basis.truncation(),
                n
            )));
        }
        let x = basis.coordinates(&b, b.len() - 1)?;
        m.set_column(i, &nalgebra::DVector::from_vec(x));
    }
    Ok(m)
}

/// Matrix of `T_n` from the coset coefficients regardless of `n`.
pub fn hecke_matrix_cosets(n: OddSquare, basis: &BasisSet) -> Result<DMatrix<f64>, SpectralError> {
    let d = basis.dim();
    let mut m = DMatrix::zeros(d, d);
    for (i, f) in basis.members.iter().enumerate() {
        let b = hecke_coset_coefficients(f, n)?;
        if b.len() <= d + 2 {
            return Err(SpectralError::Domain(format!("truncation {} too short for T_{n}", basis.truncation())));
        }
        let x = basis.coordinates(&b, b.len() - 1)?;
        m.set_column(i, &nalgebra::DVector::from_vec(x));
    }
    Ok(m)
}

/// The expansion with the given coordinates after applying the matrix.
pub fn apply_matrix(basis: &BasisSet, m: &DMatrix<f64>, x: &[f64]) -> QExpansion {
    let y = m * nalgebra::DVector::from_column_slice(x);
    basis.combine(y.as_slice())
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

    fn sq(n: i64) -> OddSquare {
        OddSquare::new(n).unwrap()
    }

    #[test]
    fn coefficient_rule_matches_coset_coefficients() {
        for x in [9u32, 13, 17] {
            let b = basis_cuspforms(w(x), 900).unwrap();
            for f in &b.members {
                for p in [3u64, 5] {
                    let rule = hecke_coefficient_rule(f, p).unwrap();
                    let coset = hecke_coset_coefficients(f, sq((p * p) as i64)).unwrap();
                    let scale = rule.iter().map(|c| c.abs()).fold(0.0, f64::max);
                    for (a, c) in rule.iter().zip(&coset) {
                        assert!((a - c).abs() < 1e-10 * scale, "w={x} p={p}: {a} vs {c}");
                    }
                }
            }
        }
    }

    #[test]
    fn pointwise_matches_matrix() {
        let b = basis_cuspforms(w(13), 1200).unwrap();
        let m = hecke_matrix(sq(9), &b).unwrap();
        let z = Complex64::new(0.0, 1.0);
        for i in 0..b.dim() {
            let mut x = vec![0.0; b.dim()];
            x[i] = 1.0;
            let image = apply_matrix(&b, &m, &x);
            let direct = hecke_coset_apply(&b.members[i], sq(9), z).unwrap();
            assert!(rel_err(direct, evaluate_form(&image, z).unwrap()) < 1e-8);
        }
    }

    #[test]
    fn identity_and_scalar_cases() {
        let b = basis_cuspforms(w(13), 900).unwrap();
        let z = Complex64::new(0.2, 0.9);
        let f = &b.members[1];
        assert!(rel_err(hecke_coset_apply(f, sq(1), z).unwrap(), evaluate_form(f, z).unwrap()) < 1e-12);
        let m = hecke_matrix(sq(9), &b).unwrap();
        let lam = m[(0, 0)];
        assert!((m.clone() - DMatrix::identity(2, 2) * lam).norm() < 1e-9 * lam.abs());
    }

    #[test]
    fn commuting_operators() {
        let b = basis_cuspforms(w(17), 1600).unwrap();
        let t9 = hecke_matrix(sq(9), &b).unwrap();
        let t25 = hecke_matrix(sq(25), &b).unwrap();
        let c = &t9 * &t25 - &t25 * &t9;
        assert!(c.norm() < 1e-9 * t9.norm() * t25.norm());
        let t225 = hecke_matrix(sq(225), &b).unwrap();
        assert!((t225 - &t9 * &t25).norm() < 1e-8 * t9.norm() * t25.norm());
    }

    #[test]
    fn rejects_bad_primes() {
        let b = basis_cuspforms(w(9), 450).unwrap();
        assert!(hecke_coefficient_rule(&b.members[0], 9).is_err());
        assert!(hecke_coefficient_rule(&b.members[0], 2).is_err());
    }
}
