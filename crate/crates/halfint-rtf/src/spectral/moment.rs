//! Eigenforms, Hecke eigenvalues and the spectral side
//! `J_Spec(s, n) = n^{(kappa-1)/2} Gamma(s1 + kappa/2) Gamma(s2 + kappa/2) (2 pi)^{-(s1+s2+kappa)}
//! sum_f Lambda_f(n) L(1/2 + s1, f) conj(L(1/2 + conj(s2), f)) / ||f||^2`.

use std::collections::BTreeMap;

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use super::basis::{basis_cuspforms, min_truncation, BasisSet};
use super::hecke::hecke_matrix;
use super::lvalue::basis_l_values;
use super::petersson::{petersson_gram, Gram, QuadratureGrid};
use super::SpectralError;
use crate::geometric::SpectralPoint;
use crate::params::{OddSquare, Weight};
use crate::specfun::{cpow, gamma_c};

/// Truncation and quadrature settings for the spectral side.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectralConfig {
    pub weight: Weight,
    /// Largest Hecke index that will be requested.
    pub max_hecke: OddSquare,
    pub grid: QuadratureGrid,
}

impl SpectralConfig {
    pub fn new(weight: Weight, max_hecke: OddSquare) -> Self {
        SpectralConfig { weight, max_hecke, grid: QuadratureGrid::default() }
    }

    /// Enough coefficients for the Gram quadrature and for `T_n` on the full space.
    pub fn truncation(&self) -> usize {
        let dim = (self.weight.twice() / 4).saturating_sub(1) as usize;
        let hecke = self.max_hecke.get() as usize * (dim + 3);
        hecke.max(1200).max(min_truncation(self.weight))
    }
}

/// `Gamma(s1 + kappa/2) Gamma(s2 + kappa/2) (2 pi)^{-(s1 + s2 + kappa)}`.
pub fn spectral_prefactor(s: SpectralPoint, w: Weight) -> Result<Complex64, SpectralError> {
    let k = w.kappa();
    let (a, b) = (s.s1 + k / 2.0, s.s2 + k / 2.0);
    Ok(gamma_c(a)? * gamma_c(b)? / cpow(Complex64::new(2.0 * PI, 0.0), a + b))
}

/// Basis, Gram matrix, central values and Hecke matrices at one weight.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectralData {
    pub config: SpectralConfig,
    pub basis: BasisSet,
    pub gram: Gram,
    /// `L(1/2, E_i)`.
    pub central_values: Vec<f64>,
    pub hecke: BTreeMap<i64, DMatrix<f64>>,
}

impl SpectralData {
    pub fn build(config: SpectralConfig) -> Result<Self, SpectralError> {
        let basis = basis_cuspforms(config.weight, config.truncation())?;
        let gram = petersson_gram(&basis, &config.grid)?;
        let central_values = basis_l_values(&basis, Complex64::new(0.0, 0.0))?.into_iter().map(|v| v.re).collect();
        Ok(SpectralData { config, basis, gram, central_values, hecke: BTreeMap::new() })
    }

    pub fn kappa(&self) -> f64 {
        self.config.weight.kappa()
    }

    /// The matrix of `T_n`, computed on first use.
    pub fn hecke(&mut self, n: OddSquare) -> Result<&DMatrix<f64>, SpectralError> {
        if n.get() > self.config.max_hecke.get() {
            return Err(SpectralError::Domain(format!("T_{n} beyond the configured maximum {}", self.config.max_hecke)));
        }
        if !self.hecke.contains_key(&n.get()) {
            let m = hecke_matrix(n, &self.basis)?;
            self.hecke.insert(n.get(), m);
        }
        Ok(&self.hecke[&n.get()])
    }

    fn gram_inverse(&self) -> Result<DMatrix<f64>, SpectralError> {
        self.gram
            .matrix
            .clone()
            .cholesky()
            .map(|c| c.inverse())
            .ok_or(SpectralError::Numerical { what: "Gram inverse", detail: "matrix is not positive definite".into() })
    }

    /// `sum_f (T_n f eigenvalue) L(1/2 + s1, f) conj(L(1/2 + conj s2, f)) / ||f||^2` from the
    /// bilinear form `l1^T T G^{-1} conj(l2)`, no eigenforms needed.
    pub fn moment_basis_free(&mut self, s: SpectralPoint, n: OddSquare) -> Result<Complex64, SpectralError> {
        let l1 = basis_l_values(&self.basis, s.s1)?;
        let l2 = basis_l_values(&self.basis, s.s2.conj())?;
        let ginv = self.gram_inverse()?;
        let t = self.hecke(n)?.clone();
        let op = (t * ginv).map(|x| Complex64::new(x, 0.0));
        let v1 = DVector::from_vec(l1);
        let v2 = DVector::from_vec(l2.into_iter().map(|z| z.conj()).collect());
        Ok((v1.transpose() * op * v2)[(0, 0)])
    }

    /// The same sum at `s = 0` over an orthonormal eigenbasis.
    pub fn moment_eigen(&mut self, n: OddSquare) -> Result<f64, SpectralError> {
        let eig = self.eigenforms(&[n])?;
        Ok(eig.forms.iter().map(|f| f.hecke[&n.get()] * f.central_value * f.central_value).sum())
    }

    /// `J_Spec(s, n)`.
    pub fn j_spec(&mut self, s: SpectralPoint, n: OddSquare) -> Result<Complex64, SpectralError> {
        Ok(spectral_prefactor(s, self.config.weight)? * self.moment_basis_free(s, n)?)
    }

    /// Orthonormal simultaneous eigenforms of the given Hecke operators.
    pub fn eigenforms(&mut self, ops: &[OddSquare]) -> Result<EigenData, SpectralError> {
        let d = self.basis.dim();
        let chol = self
            .gram
            .matrix
            .clone()
            .cholesky()
            .ok_or(SpectralError::Numerical { what: "Gram Cholesky", detail: "matrix is not positive definite".into() })?;
        let l = chol.l();
        let l_inv_t = l.clone().try_inverse().expect("triangular factor is invertible").transpose();
        let mut sym = Vec::new();
        for &n in ops {
            let t = self.hecke(n)?.clone();
            let s = l.transpose() * t * &l_inv_t;
            let s = (&s + s.transpose()) * 0.5;
            sym.push((n, s));
        }
        let mut combo = DMatrix::zeros(d, d);
        for (i, (_, s)) in sym.iter().enumerate() {
            combo += s / (s.norm().max(f64::MIN_POSITIVE)) * (1.0 + 0.37 * i as f64).recip();
        }
        let v = SymmetricEigen::new(combo).eigenvectors;
        let mut forms = Vec::with_capacity(d);
        for k in 0..d {
            let col = v.column(k).into_owned();
            let mut hecke = BTreeMap::new();
            for (n, s) in &sym {
                let sv = s * &col;
                let e = col.dot(&sv);
                let residual = (sv - &col * e).norm();
                if residual > 1e-7 * s.norm() {
                    return Err(SpectralError::Numerical {
                        what: "simultaneous diagonalization",
                        detail: format!("T_{n} residual {residual:e}"),
                    });
                }
                hecke.insert(n.get(), e);
            }
            let coords: Vec<f64> = (&l_inv_t * &col).iter().copied().collect();
            let central_value = coords.iter().zip(&self.central_values).map(|(x, l)| x * l).sum();
            forms.push(Eigenform { coords, hecke, central_value });
        }
        Ok(EigenData { weight: self.config.weight, forms })
    }
}

/// An eigenform of unit Petersson norm.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Eigenform {
    pub coords: Vec<f64>,
    /// Eigenvalues of `T_n`, keyed by `n`.
    pub hecke: BTreeMap<i64, f64>,
    pub central_value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EigenData {
    pub weight: Weight,
    pub forms: Vec<Eigenform>,
}

impl Eigenform {
    /// `Lambda_f(n) = (T_n eigenvalue) / n^{(kappa-1)/2}`.
    pub fn lambda(&self, n: OddSquare, w: Weight) -> Option<f64> {
        self.hecke.get(&n.get()).map(|e| e / (n.get() as f64).powf((w.kappa() - 1.0) / 2.0))
    }

    /// `lambda_F(p) = Lambda_f(p^2)`.
    pub fn lambda_shimura_p(&self, p: i64, w: Weight) -> Option<f64> {
        self.lambda(OddSquare::new(p * p).ok()?, w)
    }

    /// `lambda_F(p^2) = Lambda_f(p^4) + 1/p`.
    pub fn lambda_shimura_p2(&self, p: i64, w: Weight) -> Option<f64> {
        Some(self.lambda(OddSquare::new(p.pow(4)).ok()?, w)? + 1.0 / p as f64)
    }
}
