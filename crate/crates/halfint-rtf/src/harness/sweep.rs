//! The remainder `r(kappa) = J(0, 1) i^kappa C_kappa Gamma(kappa) / (4 Gamma(kappa/2)^2) - log kappa`
//! of the first moment asymptotic, from the spectral side.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;

use super::cache::{remember, spectral_data, Cache};
use super::{Decimal17, HarnessError, InStage, Stage};
use crate::geometric::{i_kappa_c_kappa, SpectralPoint};
use crate::params::{OddSquare, Weight};
use crate::spectral::moment::SpectralConfig;
use crate::specfun::gamma_c;

pub const REMAINDER_BOUND: f64 = 5.0;
pub const ADJACENT_VARIATION: f64 = 2.0;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub kappa: String,
    pub lhs: Decimal17,
    pub normalized: Decimal17,
    pub remainder: Decimal17,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct SweepTable {
    pub rows: Vec<SweepRow>,
}

/// `i^kappa C_kappa Gamma(kappa) / (4 Gamma(kappa/2)^2)`.
pub fn moment_normalizer(w: Weight) -> Result<f64, HarnessError> {
    let k = w.kappa();
    let g = |x: f64| gamma_c(Complex64::new(x, 0.0)).map(|v| v.re).map_err(|e| HarnessError::Spectral { stage: Stage::Spectral, source: e.into() });
    let half = g(k / 2.0)?;
    Ok(i_kappa_c_kappa(k).re * g(k)? / (4.0 * half * half))
}

pub fn run_asymptotic_sweep(kappas: &[Weight], cache: Option<&Cache>) -> Result<SweepTable, HarnessError> {
    let mut rows = Vec::with_capacity(kappas.len());
    for &w in kappas {
        let mut data = spectral_data(SpectralConfig::new(w, OddSquare::ONE), cache)?;
        let lhs = data.j_spec(SpectralPoint::ZERO, OddSquare::ONE).stage(Stage::Spectral)?;
        remember(&data, cache)?;
        let normalized = lhs.re * moment_normalizer(w)?;
        rows.push(SweepRow {
            kappa: w.to_string(),
            lhs: Decimal17(lhs.re),
            normalized: Decimal17(normalized),
            remainder: Decimal17(normalized - w.kappa().ln()),
        });
    }
    Ok(SweepTable { rows })
}

impl SweepTable {
    pub fn remainders(&self) -> Vec<f64> {
        self.rows.iter().map(|r| r.remainder.0).collect()
    }

    pub fn all_finite(&self) -> bool {
        self.remainders().iter().all(|r| r.is_finite())
    }

    pub fn max_abs_remainder(&self) -> f64 {
        self.remainders().iter().fold(0.0, |a, r| a.max(r.abs()))
    }

    pub fn max_adjacent_variation(&self) -> f64 {
        self.remainders().windows(2).fold(0.0, |a, p| a.max((p[1] - p[0]).abs()))
    }

    /// Finite, bounded by `REMAINDER_BOUND` and varying by less than `ADJACENT_VARIATION`.
    pub fn pass(&self) -> bool {
        self.all_finite() && self.max_abs_remainder() <= REMAINDER_BOUND && self.max_adjacent_variation() < ADJACENT_VARIATION
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("kappa,lhs,normalized,remainder\n");
        for r in &self.rows {
            let _ = writeln!(out, "{},{},{},{}", r.kappa, r.lhs, r.normalized, r.remainder);
        }
        out
    }
}
