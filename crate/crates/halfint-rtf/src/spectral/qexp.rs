//! Truncated q-expansions: exact integer series for construction, floating
//! coefficients for evaluation.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use super::SpectralError;
use crate::arithmetic;

/// Exact integer power series `sum_{n <= N} c(n) q^n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntSeries(pub Vec<i128>);

impl IntSeries {
    pub fn one(len: usize) -> Self {
        let mut c = vec![0; len];
        c[0] = 1;
        IntSeries(c)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Product truncated to the shorter length, failing on overflow.
    pub fn mul(&self, other: &IntSeries) -> Result<IntSeries, SpectralError> {
        let len = self.len().min(other.len());
        let mut out = vec![0i128; len];
        let sparse: Vec<(usize, i128)> = other.0.iter().copied().enumerate().filter(|&(_, c)| c != 0).collect();
        for (i, &a) in self.0.iter().enumerate().take(len) {
            if a == 0 {
                continue;
            }
            for &(j, b) in &sparse {
                if i + j >= len {
                    break;
                }
                let t = a.checked_mul(b).ok_or(SpectralError::Overflow(i + j))?;
                out[i + j] = out[i + j].checked_add(t).ok_or(SpectralError::Overflow(i + j))?;
            }
        }
        Ok(IntSeries(out))
    }

    pub fn pow(&self, e: u32) -> Result<IntSeries, SpectralError> {
        let mut acc = IntSeries::one(self.len());
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    pub fn scale_sub(&self, k: i128, other: &IntSeries) -> Result<IntSeries, SpectralError> {
        self.0
            .iter()
            .zip(&other.0)
            .enumerate()
            .map(|(n, (&a, &b))| k.checked_mul(b).and_then(|kb| a.checked_sub(kb)).ok_or(SpectralError::Overflow(n)))
            .collect::<Result<Vec<_>, _>>()
            .map(IntSeries)
    }
}

/// `theta(z) = sum_{n in Z} q^{n^2}` to `q^len-1`.
pub fn theta_series(len: usize) -> IntSeries {
    let mut c = vec![0i128; len];
    let mut k = 0usize;
    while k * k < len {
        c[k * k] += if k == 0 { 1 } else { 2 };
        k += 1;
    }
    IntSeries(c)
}

/// `F2(z) = sum_{n odd} sigma_1(n) q^n`.
pub fn f2_series(len: usize) -> IntSeries {
    let mut c = vec![0i128; len];
    for n in (1..len).step_by(2) {
        c[n] = arithmetic::sigma(n as u64, 1) as i128;
    }
    IntSeries(c)
}

/// A truncated q-expansion `sum_{n=0}^{N} c(n) e(nz)` of weight `twice_weight / 2`,
/// with raw (unnormalized) coefficients.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QExpansion {
    pub twice_weight: u32,
    pub coeffs: Vec<f64>,
}

/// Required relative size of the truncation tail.
pub const TAIL_TOL: f64 = 1e-12;
/// Margin on the empirical growth constant in the tail bound.
pub const GROWTH_MARGIN: f64 = 100.0;

impl QExpansion {
    pub fn from_int(twice_weight: u32, s: &IntSeries) -> Self {
        QExpansion { twice_weight, coeffs: s.0.iter().map(|&c| c as f64).collect() }
    }

    pub fn kappa(&self) -> f64 {
        self.twice_weight as f64 / 2.0
    }

    /// Truncation `N`.
    pub fn truncation(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> f64 {
        self.coeffs.get(n).copied().unwrap_or(0.0)
    }

    /// `max_n |c(n)| / n^{kappa/2}` over the stored range.
    pub fn growth_constant(&self) -> f64 {
        let h = self.kappa() / 2.0;
        self.coeffs.iter().enumerate().skip(1).map(|(n, c)| c.abs() / (n as f64).powf(h)).fold(0.0, f64::max)
    }

    /// Bound on `sum_{n > N} |c(n)| r^n` assuming `|c(n)| <= 100 A n^{kappa/2}`.
    pub fn tail_bound(&self, r: f64) -> f64 {
        self.tail_bound_with(self.growth_constant(), r)
    }

    /// The same bound with a precomputed growth constant `A`.
    pub fn tail_bound_with(&self, growth: f64, r: f64) -> f64 {
        let h = self.kappa() / 2.0;
        let n = self.truncation() as f64;
        let ratio = r * ((n + 2.0) / (n + 1.0)).powf(h);
        if ratio >= 1.0 {
            return f64::INFINITY;
        }
        GROWTH_MARGIN * growth * (n + 1.0).powf(h) * r.powf(n + 1.0) / (1.0 - ratio)
    }

    /// `f(z)` together with all members sharing this truncation, skipping the tail check.
    pub fn evaluate_unchecked(&self, z: Complex64) -> Complex64 {
        let q = (Complex64::new(0.0, 2.0 * PI) * z).exp();
        let mut qn = Complex64::new(1.0, 0.0);
        let mut acc = Complex64::new(0.0, 0.0);
        for &c in &self.coeffs {
            if c != 0.0 {
                acc += qn * c;
            }
            qn *= q;
        }
        acc
    }
}

/// `f(z)` for `Im z >= 0.01`, failing if the truncation tail may exceed `10^-12` of the leading term.
pub fn evaluate_form(f: &QExpansion, z: Complex64) -> Result<Complex64, SpectralError> {
    evaluate_with_growth(f, f.growth_constant(), z)
}

/// [`evaluate_form`] with a precomputed growth constant.
pub fn evaluate_with_growth(f: &QExpansion, growth: f64, z: Complex64) -> Result<Complex64, SpectralError> {
    if !(z.im >= 0.01) {
        return Err(SpectralError::Domain(format!("evaluation point {z} below Im z = 0.01")));
    }
    let r = (-2.0 * PI * z.im).exp();
    let leading = f
        .coeffs
        .iter()
        .enumerate()
        .find(|(_, c)| **c != 0.0)
        .map(|(n, c)| c.abs() * r.powi(n as i32))
        .unwrap_or(0.0);
    let tail = f.tail_bound_with(growth, r);
    if tail > TAIL_TOL * leading {
        return Err(SpectralError::Truncation { point: z, tail, leading });
    }
    Ok(f.evaluate_unchecked(z))
}

/// Evaluates several expansions of equal truncation at one point with shared powers of `q`.
pub fn evaluate_many(forms: &[QExpansion], z: Complex64) -> Vec<Complex64> {
    let q = (Complex64::new(0.0, 2.0 * PI) * z).exp();
    let mut out = vec![Complex64::new(0.0, 0.0); forms.len()];
    let len = forms.iter().map(|f| f.coeffs.len()).max().unwrap_or(0);
    let mut qn = Complex64::new(1.0, 0.0);
    for n in 0..len {
        for (acc, f) in out.iter_mut().zip(forms) {
            let c = f.coeff(n);
            if c != 0.0 {
                *acc += qn * c;
            }
        }
        qn *= q;
    }
    out
}

/// The generators `theta` (weight 1/2) and `F2` (weight 2) to `q^N`.
pub fn generator_qexps(n: usize) -> Result<(QExpansion, QExpansion), SpectralError> {
    if n < 100 {
        return Err(SpectralError::Domain(format!("generator truncation {n} below 100")));
    }
    Ok((QExpansion::from_int(1, &theta_series(n + 1)), QExpansion::from_int(4, &f2_series(n + 1))))
}
