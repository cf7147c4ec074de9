//! Bases of cusp forms of half-integral weight on Gamma0(4) built from theta and F2,
//! together with their expansions at the cusp 0.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use num_complex::Complex64;

use super::qexp::{evaluate_with_growth, f2_series, theta_series, QExpansion};
use super::SpectralError;
use crate::params::Weight;

/// Cusp forms `E_b = theta^a F2^b (theta^4 - 16 F2)`, `a + 4b + 4 = 2 kappa`, `b >= 1`.
///
/// `fricke[i]` is the expansion `g` with `f(-1/(4u)) = (-2iu)^kappa g(u)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BasisSet {
    pub weight: Weight,
    pub members: Vec<QExpansion>,
    pub fricke: Vec<QExpansion>,
    /// `(a, b)` of each member.
    pub exponents: Vec<(u32, u32)>,
}

/// `dim S_k(Gamma0(2))` for even `k >= 4` from the genus/elliptic-point formula.
pub fn dim_cusp_gamma0_2(k: u32) -> Result<usize, SpectralError> {
    if k < 4 || k % 2 == 1 {
        return Err(SpectralError::Domain(format!("integral weight {k} must be even and at least 4")));
    }
    let (genus, cusps, nu2, nu3) = (0i64, 2i64, 1i64, 0i64);
    let k = k as i64;
    let d = (k - 1) * (genus - 1) + (k / 2 - 1) * cusps + nu2 * (k / 4) + nu3 * (k / 3);
    Ok(d.max(0) as usize)
}

/// Minimum truncation for weight `kappa`.
pub fn min_truncation(w: Weight) -> usize {
    (50.0 * w.kappa()).ceil() as usize
}

/// Basis of `S_kappa(Gamma0(4))` to `q^N`.
pub fn basis_cuspforms(w: Weight, n: usize) -> Result<BasisSet, SpectralError> {
    if w.twice() > 29 {
        return Err(SpectralError::Domain(format!("weight {w} above 29/2")));
    }
    if n < min_truncation(w) {
        return Err(SpectralError::Domain(format!("truncation {n} below 50 kappa = {}", min_truncation(w))));
    }
    let len = n + 1;
    let theta = theta_series(len);
    let f2 = f2_series(len);
    let e4 = theta.pow(4)?.scale_sub(16, &f2)?;
    let top = w.twice() / 4;
    let mut members = Vec::new();
    let mut fricke = Vec::new();
    let mut exponents = Vec::new();
    for b in 1..top {
        let a = w.twice() - 4 * (b + 1);
        let th = theta.pow(a)?;
        let member = th.mul(&f2.pow(b)?)?.mul(&e4)?;
        let image = th.mul(&e4.pow(b)?)?.mul(&f2)?;
        members.push(QExpansion::from_int(w.twice(), &member));
        let mut g = QExpansion::from_int(w.twice(), &image);
        let scale = 16f64.powi(1 - b as i32);
        g.coeffs.iter_mut().for_each(|c| *c *= scale);
        fricke.push(g);
        exponents.push((a, b));
    }
    let expected = dim_cusp_gamma0_2(w.twice() - 1)?;
    if members.len() != expected {
        return Err(SpectralError::Dimension { expected, found: members.len() });
    }
    let basis = BasisSet { weight: w, members, fricke, exponents };
    let rank = numeric_rank(&basis.coefficient_matrix(1, 4 * expected + 8), 1e-8);
    if rank != expected {
        return Err(SpectralError::Dimension { expected, found: rank });
    }
    Ok(basis)
}

/// Rank with singular values below `tol * max` discarded, after normalizing rows.
pub fn numeric_rank(m: &DMatrix<f64>, tol: f64) -> usize {
    if m.nrows() == 0 || m.ncols() == 0 {
        return 0;
    }
    let mut m = m.clone();
    for mut row in m.row_iter_mut() {
        let norm = row.norm();
        if norm > 0.0 {
            row /= norm;
        }
    }
    let sv = m.singular_values();
    let max = sv.max();
    sv.iter().filter(|&&s| s > tol * max).count()
}

impl BasisSet {
    pub fn dim(&self) -> usize {
        self.members.len()
    }

    pub fn truncation(&self) -> usize {
        self.members.first().map_or(0, |m| m.truncation())
    }

    /// `dim x (hi - lo + 1)` matrix of coefficients `c_i(n)`, `lo <= n <= hi`.
    pub fn coefficient_matrix(&self, lo: usize, hi: usize) -> DMatrix<f64> {
        DMatrix::from_fn(self.dim(), hi + 1 - lo, |i, j| self.members[i].coeff(lo + j))
    }

    /// Coordinates of a q-expansion in this basis from the coefficients `1..=dim`, the
    /// members being triangular there; fails if the expansion leaves the span on `1..=check`.
    pub fn coordinates(&self, coeffs: &[f64], check: usize) -> Result<Vec<f64>, SpectralError> {
        let d = self.dim();
        let mut x = vec![0.0; d];
        for i in 0..d {
            let n = i + 1;
            let mut rest = coeffs.get(n).copied().unwrap_or(0.0);
            for (j, xj) in x.iter().enumerate().take(i) {
                rest -= xj * self.members[j].coeff(n);
            }
            x[i] = rest / self.members[i].coeff(n);
        }
        let mut worst: f64 = 0.0;
        let mut scale: f64 = 0.0;
        for n in 1..=check.min(self.truncation()) {
            let fit: f64 = x.iter().zip(&self.members).map(|(xi, m)| xi * m.coeff(n)).sum();
            let target = coeffs.get(n).copied().unwrap_or(0.0);
            worst = worst.max((fit - target).abs());
            scale = scale.max(target.abs()).max(fit.abs());
        }
        if worst > 1e-9 * scale.max(f64::MIN_POSITIVE) {
            return Err(SpectralError::NotInSpan { residual: worst / scale.max(f64::MIN_POSITIVE) });
        }
        Ok(x)
    }

    /// The form with the given coordinates.
    pub fn combine(&self, x: &[f64]) -> QExpansion {
        combine_expansions(&self.members, x)
    }

    /// Its expansion at the cusp 0.
    pub fn combine_fricke(&self, x: &[f64]) -> QExpansion {
        combine_expansions(&self.fricke, x)
    }

    /// Sign `(-1)^lambda` of the plus space condition.
    pub fn plus_sign(&self) -> i64 {
        if self.weight.lambda() % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Whether `n` is in the support pattern `(-1)^lambda n = 0, 1 mod 4`.
    pub fn plus_supported(&self, n: usize) -> bool {
        (self.plus_sign() * n as i64).rem_euclid(4) <= 1
    }

    /// Coordinates (rows) of a basis of the plus subspace.
    pub fn plus_space(&self) -> DMatrix<f64> {
        let hi = self.truncation().min(40 * self.dim() + 40);
        let excluded: Vec<usize> = (1..=hi).filter(|&n| !self.plus_supported(n)).collect();
        let mut cond = DMatrix::from_fn(self.dim(), excluded.len(), |i, j| self.members[i].coeff(excluded[j]));
        let scales: Vec<f64> = (0..self.dim()).map(|i| cond.row(i).norm().max(f64::MIN_POSITIVE)).collect();
        for (i, s) in scales.iter().enumerate() {
            cond.row_mut(i).unscale_mut(*s);
        }
        let svd = cond.transpose().svd(false, true);
        let v_t = svd.v_t.expect("right singular vectors requested");
        let max = svd.singular_values.max().max(f64::MIN_POSITIVE);
        let mut rows = Vec::new();
        for (k, s) in svd.singular_values.iter().enumerate() {
            if *s <= 1e-10 * max {
                rows.push(v_t.row(k).iter().zip(&scales).map(|(v, sc)| v / sc).collect::<Vec<f64>>());
            }
        }
        for k in svd.singular_values.len()..self.dim() {
            rows.push(v_t.row(k).iter().zip(&scales).map(|(v, sc)| v / sc).collect());
        }
        DMatrix::from_fn(rows.len(), self.dim(), |i, j| rows[i][j])
    }
}

/// Pointwise evaluation of all members, through the expansion at 0 when that converges faster.
#[derive(Debug, Clone)]
pub struct BasisEvaluator<'a> {
    basis: &'a BasisSet,
    growth: Vec<f64>,
    growth_fricke: Vec<f64>,
}

impl<'a> BasisEvaluator<'a> {
    pub fn new(basis: &'a BasisSet) -> Self {
        BasisEvaluator {
            basis,
            growth: basis.members.iter().map(|f| f.growth_constant()).collect(),
            growth_fricke: basis.fricke.iter().map(|f| f.growth_constant()).collect(),
        }
    }

    pub fn basis(&self) -> &BasisSet {
        self.basis
    }

    /// Values `E_i(z)`.
    pub fn values(&self, z: Complex64) -> Result<Vec<Complex64>, SpectralError> {
        let u = -1.0 / (4.0 * z);
        if z.im >= u.im {
            self.basis.members.iter().zip(&self.growth).map(|(f, a)| evaluate_with_growth(f, *a, z)).collect()
        } else {
            let factor = (Complex64::new(0.0, -2.0) * u).powf(self.basis.weight.kappa());
            self.basis
                .fricke
                .iter()
                .zip(&self.growth_fricke)
                .map(|(g, a)| Ok(factor * evaluate_with_growth(g, *a, u)?))
                .collect()
        }
    }

    /// Values `g_i(u)` of the expansions at the cusp 0.
    pub fn fricke_values(&self, u: Complex64) -> Result<Vec<Complex64>, SpectralError> {
        self.basis.fricke.iter().zip(&self.growth_fricke).map(|(g, a)| evaluate_with_growth(g, *a, u)).collect()
    }

    /// Values on the imaginary axis from the expansion at infinity only.
    pub fn direct_values(&self, z: Complex64) -> Result<Vec<Complex64>, SpectralError> {
        self.basis.members.iter().zip(&self.growth).map(|(f, a)| evaluate_with_growth(f, *a, z)).collect()
    }
}

fn combine_expansions(forms: &[QExpansion], x: &[f64]) -> QExpansion {
    let len = forms.first().map_or(0, |f| f.coeffs.len());
    let mut coeffs = vec![0.0; len];
    for (f, xi) in forms.iter().zip(x) {
        for (c, fc) in coeffs.iter_mut().zip(&f.coeffs) {
            *c += xi * fc;
        }
    }
    QExpansion { twice_weight: forms.first().map_or(0, |f| f.twice_weight), coeffs }
}

/// Exact series of the member `E_b`.
#[cfg(test)]
fn member_series(w: Weight, b: u32, len: usize) -> super::qexp::IntSeries {
    let theta = theta_series(len);
    let f2 = f2_series(len);
    let e4 = theta.pow(4).unwrap().scale_sub(16, &f2).unwrap();
    theta.pow(w.twice() - 4 * (b + 1)).unwrap().mul(&f2.pow(b).unwrap()).unwrap().mul(&e4).unwrap()
}
