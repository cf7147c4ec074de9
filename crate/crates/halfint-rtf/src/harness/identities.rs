//! Identity suites: Hecke operators by two routes, Hecke eigenvalue relations and the
//! special function identities.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{HarnessError, InStage, Stage};
use crate::arithmetic::{char_sum_direct, char_sum_factored};
use crate::params::{OddSquare, Weight};
use crate::spectral::basis::basis_cuspforms;
use crate::spectral::hecke::{apply_matrix, hecke_coset_apply, hecke_matrix};
use crate::spectral::moment::{SpectralConfig, SpectralData};
use crate::spectral::qexp::evaluate_form;
use crate::specfun::{beta, hyp2f1, j1j2_closed, j1j2_quadrature, legendre_q_integral, lipschitz_sides, rel_err, SpecfunError};

/// Points where `T_n f` is compared by the two routes. Higher points make `T_n f` exponentially
/// small while the coset terms stay of moderate size, so the coset sum loses relative accuracy.
pub const HECKE_POINTS: [Complex64; 4] = [Complex64::new(0.0, 1.0), Complex64::new(0.3, 0.8), Complex64::new(-0.2, 0.6), Complex64::new(0.45, 0.9)];

/// Largest relative difference between `T_n E_i` from the coset sum and from the matrix
/// (coefficient rule for prime squares).
pub fn hecke_cross_route(w: Weight, n: OddSquare, truncation: usize) -> Result<f64, HarnessError> {
    let basis = basis_cuspforms(w, truncation).stage(Stage::Spectral)?;
    let m = hecke_matrix(n, &basis).stage(Stage::Spectral)?;
    let mut worst: f64 = 0.0;
    for i in 0..basis.dim() {
        let mut x = vec![0.0; basis.dim()];
        x[i] = 1.0;
        let image = apply_matrix(&basis, &m, &x);
        for z in HECKE_POINTS {
            let direct = hecke_coset_apply(&basis.members[i], n, z).stage(Stage::Spectral)?;
            let via = evaluate_form(&image, z).stage(Stage::Spectral)?;
            worst = worst.max(rel_err(direct, via));
        }
    }
    Ok(worst)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HeckeRelations {
    pub weight: Weight,
    pub forms: usize,
    /// `max |Lambda(225) - Lambda(9) Lambda(25)| / |Lambda(9) Lambda(25)|`.
    pub multiplicativity: f64,
    /// `max |lambda_F(p)^2 - lambda_F(p^2) - 1|` over `p = 3, 5`.
    pub shimura: f64,
}

/// Eigenvalue relations from simultaneous eigenforms of `T_9, T_25, T_81, T_625, T_225`.
pub fn hecke_relations(w: Weight) -> Result<HeckeRelations, HarnessError> {
    let sq = |n: i64| OddSquare::new(n).map_err(HarnessError::from);
    let mut data = SpectralData::build(SpectralConfig::new(w, sq(625)?)).stage(Stage::Spectral)?;
    let eig = data.eigenforms(&[sq(9)?, sq(25)?, sq(81)?, sq(625)?, sq(225)?]).stage(Stage::Spectral)?;
    let missing = || HarnessError::Precondition("eigenvalue missing".into());
    let (mut multiplicativity, mut shimura): (f64, f64) = (0.0, 0.0);
    for f in &eig.forms {
        let prod = f.lambda(sq(9)?, w).ok_or_else(missing)? * f.lambda(sq(25)?, w).ok_or_else(missing)?;
        let l225 = f.lambda(sq(225)?, w).ok_or_else(missing)?;
        multiplicativity = multiplicativity.max((l225 - prod).abs() / prod.abs());
        for p in [3, 5] {
            let a = f.lambda_shimura_p(p, w).ok_or_else(missing)?;
            let b = f.lambda_shimura_p2(p, w).ok_or_else(missing)?;
            shimura = shimura.max((a * a - b - 1.0).abs());
        }
    }
    Ok(HeckeRelations { weight: w, forms: eig.forms.len(), multiplicativity, shimura })
}

/// Largest errors of each special function identity over its grid.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct SpecfunSuite {
    /// `F(k/2, k/2; k; 1 - z) = 2 (1 - z)^{-k/2} Q_{k/2 - 1}((1 + z)/(1 - z)) / B(k/2, k/2)`.
    pub bridge: f64,
    pub lipschitz: f64,
    pub j1j2: f64,
    /// Absolute error relative to `max(1, |direct|)`.
    pub char_sum: f64,
    pub char_sum_cases: usize,
}

fn c(x: f64, y: f64) -> Complex64 {
    Complex64::new(x, y)
}

pub fn bridge_error(kappa: f64, z: f64) -> Result<f64, SpecfunError> {
    let h = kappa / 2.0;
    let lhs = hyp2f1(c(h, 0.0), c(h, 0.0), c(kappa, 0.0), 1.0 - z)?;
    let q = legendre_q_integral(h - 1.0, c((1.0 + z) / (1.0 - z), 0.0))?;
    let rhs = q * 2.0 * (1.0 - z).powf(-h) / beta(c(h, 0.0), c(h, 0.0))?;
    Ok(rel_err(lhs, rhs))
}

/// Bridge and Lipschitz identities over half-integral weights, the dual-cell kernel
/// integrals, and the character sum factorization for odd `g <= g_max`, `|m| <= 2g`.
pub fn specfun_suite(g_max: i64) -> Result<SpecfunSuite, HarnessError> {
    let spec = |e: SpecfunError| HarnessError::Spectral { stage: Stage::Spectral, source: e.into() };
    let arith = |e: crate::arithmetic::ArithmeticError| HarnessError::Spectral { stage: Stage::Spectral, source: e.into() };
    let mut out = SpecfunSuite::default();
    for kappa in [4.5, 6.5, 8.5, 10.5, 14.5] {
        for z in [0.05, 0.1, 0.3, 0.5, 0.7, 0.9] {
            out.bridge = out.bridge.max(bridge_error(kappa, z).map_err(spec)?);
        }
    }
    for (z, kappa, r, s) in [(c(0.0, 2.0), 4.5, 1, 1), (c(0.0, 1.0), 6.5, 2, 3), (c(0.2, 0.5), 9.5, 0, 1), (c(-0.4, 0.3), 5.5, 3, 4), (c(0.1, 0.9), 12.5, 5, 9), (c(0.45, 0.6), 7.5, 1, 25)] {
        let (lhs, rhs) = lipschitz_sides(z, kappa, r, s).map_err(spec)?;
        out.lipschitz = out.lipschitz.max((lhs - rhs).norm() / lhs.norm().max(1.0));
    }
    for (s1, s2, kappa) in [(0.3, 0.4, 6.5), (0.6, 0.7, 6.5), (0.5, 0.8, 4.5), (0.2, 0.9, 8.5)] {
        let (j1, j2) = j1j2_closed(c(s1, 0.0), c(s2, 0.0), kappa).map_err(spec)?;
        let (q1, q2) = j1j2_quadrature(c(s1, 0.0), c(s2, 0.0), kappa).map_err(spec)?;
        out.j1j2 = out.j1j2.max(rel_err(j1, q1)).max(rel_err(j2, q2));
    }
    for g in (1..=g_max).step_by(2) {
        for m in -2 * g..=2 * g {
            let direct = char_sum_direct(m, g).map_err(arith)?;
            let factored = char_sum_factored(m, g).map_err(arith)?;
            out.char_sum = out.char_sum.max((direct - factored).norm() / direct.norm().max(1.0));
            out.char_sum_cases += 1;
        }
    }
    Ok(out)
}
