//! Experiment drivers: end-to-end verification, sweeps, oracle and audit suites, reports
//! and the on-disk cache of spectral data.

pub mod audit;
pub mod cache;
pub mod identities;
pub mod oracle;
pub mod report;
pub mod sweep;
pub mod verify;

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use thiserror::Error;

use crate::cosets::CosetError;
use crate::geometric::GeometricError;
use crate::multiplier::MultiplierError;
use crate::params::ParamError;
use crate::spectral::SpectralError;

pub use audit::{bruhat_partition, multiplier_audit, AuditMismatch, MultiplierAudit, PartitionAudit};
pub use cache::{Cache, CACHE_ENV};
pub use oracle::{default_oracle_grid, run_oracle_suite, OracleCase, OracleRow, OracleTable};
pub use report::VerificationReport;
pub use sweep::{run_asymptotic_sweep, SweepRow, SweepTable};
pub use verify::run_verify;

/// Pipeline stage, attached to every propagated failure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Stage {
    Spectral,
    Singular,
    Regular,
    Oracle,
    Audit,
    Cache,
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Stage::Spectral => "spectral",
            Stage::Singular => "singular",
            Stage::Regular => "regular",
            Stage::Oracle => "oracle",
            Stage::Audit => "audit",
            Stage::Cache => "cache",
        };
        f.write_str(name)
    }
}

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("{stage} stage: {source}")]
    Spectral { stage: Stage, source: SpectralError },
    #[error("{stage} stage: {source}")]
    Geometric { stage: Stage, source: GeometricError },
    #[error("audit stage: {0}")]
    Multiplier(#[from] MultiplierError),
    #[error("audit stage: {0}")]
    Coset(#[from] CosetError),
    #[error(transparent)]
    Param(#[from] ParamError),
    #[error("precondition: {0}")]
    Precondition(String),
    #[error("cache stage: {0}")]
    Io(#[from] std::io::Error),
    #[error("cache stage: {0}")]
    Json(#[from] serde_json::Error),
}

pub(crate) trait InStage<T> {
    fn stage(self, stage: Stage) -> Result<T, HarnessError>;
}

impl<T> InStage<T> for Result<T, SpectralError> {
    fn stage(self, stage: Stage) -> Result<T, HarnessError> {
        self.map_err(|source| HarnessError::Spectral { stage, source })
    }
}

impl<T> InStage<T> for Result<T, GeometricError> {
    fn stage(self, stage: Stage) -> Result<T, HarnessError> {
        self.map_err(|source| HarnessError::Geometric { stage, source })
    }
}

/// Default tolerance ladder. The multiplier audit is exact and has no entry.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub specfun: f64,
    pub oracle_singular: f64,
    pub oracle_regular: f64,
    pub end_to_end: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { specfun: 1e-10, oracle_singular: 1e-6, oracle_regular: 1e-4, end_to_end: 1e-3 }
    }
}

/// A float written with 17 significant digits.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Default)]
pub struct Decimal17(pub f64);

impl fmt::Display for Decimal17 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_finite() {
            write!(f, "{:.16e}", self.0)
        } else {
            write!(f, "{}", self.0)
        }
    }
}

impl Serialize for Decimal17 {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Decimal17 {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map(Decimal17).map_err(serde::de::Error::custom)
    }
}

/// A complex number as two 17-digit decimals.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Complex17 {
    pub re: Decimal17,
    pub im: Decimal17,
}

impl From<Complex64> for Complex17 {
    fn from(z: Complex64) -> Self {
        Complex17 { re: Decimal17(z.re), im: Decimal17(z.im) }
    }
}

impl From<Complex17> for Complex64 {
    fn from(z: Complex17) -> Self {
        Complex64::new(z.re.0, z.im.0)
    }
}

impl fmt::Display for Complex17 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.re, self.im)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_digits_round_trip() {
        for x in [1.0 / 3.0, -2.5e-300, 6.02214076e23, 0.0] {
            let s = Decimal17(x).to_string();
            let mantissa: String = s.split('e').next().unwrap().chars().filter(|c| c.is_ascii_digit()).collect();
            assert_eq!(mantissa.len(), 17, "{s}");
            assert_eq!(s.parse::<f64>().unwrap(), x);
        }
        let json = serde_json::to_string(&Complex17::from(Complex64::new(0.1, -3.0))).unwrap();
        let back: Complex17 = serde_json::from_str(&json).unwrap();
        assert_eq!(Complex64::from(back), Complex64::new(0.1, -3.0));
    }
}
