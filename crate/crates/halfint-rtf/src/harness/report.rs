//! The end-to-end verification report.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{Complex17, Decimal17};
use crate::geometric::{GeomConfig, RegValue};
use crate::spectral::moment::SpectralConfig;

/// Bumped whenever a field changes meaning or layout.
pub const REPORT_SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectralSide {
    /// `prefactor * basis_free`.
    pub value: Complex17,
    pub prefactor: Complex17,
    /// `l^T T_n G^{-1} conj(l)`.
    pub basis_free: Complex17,
    /// The same sum over an orthonormal eigenbasis.
    pub eigen: Decimal17,
    pub route_discrepancy: Decimal17,
    pub dim: usize,
    pub truncation: usize,
    pub gram_error_estimate: Decimal17,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegItem {
    pub component: u8,
    pub value: Complex17,
    pub partial: Complex17,
    pub m_max: u64,
    pub tail_estimate: Decimal17,
}

impl RegItem {
    pub fn new(component: u8, r: &RegValue) -> Self {
        RegItem { component, value: r.value.into(), partial: r.partial.into(), m_max: r.m_max, tail_estimate: Decimal17(r.tail_estimate) }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeometricSide {
    pub j_sing: Complex17,
    /// The contour value with half the nodes.
    pub j_sing_coarse: Complex17,
    pub reg: Vec<RegItem>,
    /// `j_sing + sum of reg values`.
    pub total: Complex17,
}

/// Relative error contributions by stage.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErrorBudgets {
    pub gram_quadrature: Decimal17,
    pub spectral_routes: Decimal17,
    pub contour: Decimal17,
    pub regular_tail: Decimal17,
    pub total: Decimal17,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConfigEcho {
    pub spectral: SpectralConfig,
    pub geometric: GeomConfig,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Timings {
    pub spectral_ms: u64,
    pub singular_ms: u64,
    pub regular_ms: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub schema_version: u32,
    pub kappa: String,
    pub n: i64,
    pub tolerance: Decimal17,
    pub spectral: SpectralSide,
    pub geometric: GeometricSide,
    pub absolute_discrepancy: Decimal17,
    pub relative_discrepancy: Decimal17,
    pub pass: bool,
    pub budgets: ErrorBudgets,
    pub config: ConfigEcho,
    pub timings_ms: Timings,
}

/// The derived fields, computed from itemized values in a fixed order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Assessment {
    pub spectral: Complex64,
    pub geometric: Complex64,
    pub absolute: f64,
    pub relative: f64,
    pub pass: bool,
}

pub fn assess(prefactor: Complex64, basis_free: Complex64, j_sing: Complex64, reg: &[Complex64], tol: f64) -> Assessment {
    let spectral = prefactor * basis_free;
    let geometric = reg.iter().fold(j_sing, |acc, r| acc + r);
    let absolute = (spectral - geometric).norm();
    let relative = absolute / geometric.norm();
    Assessment { spectral, geometric, absolute, relative, pass: relative <= tol }
}

impl VerificationReport {
    /// Recomputes every derived field from the itemized ones and lists disagreements.
    pub fn consistency_errors(&self) -> Vec<String> {
        let reg: Vec<Complex64> = self.geometric.reg.iter().map(|r| r.value.into()).collect();
        let a = assess(
            self.spectral.prefactor.into(),
            self.spectral.basis_free.into(),
            self.geometric.j_sing.into(),
            &reg,
            self.tolerance.0,
        );
        let mut out = Vec::new();
        let mut check = |name: &str, stored: Complex64, fresh: Complex64| {
            if stored != fresh {
                out.push(format!("{name}: stored {stored}, recomputed {fresh}"));
            }
        };
        check("spectral value", self.spectral.value.into(), a.spectral);
        check("geometric total", self.geometric.total.into(), a.geometric);
        check("absolute discrepancy", Complex64::new(self.absolute_discrepancy.0, 0.0), Complex64::new(a.absolute, 0.0));
        check("relative discrepancy", Complex64::new(self.relative_discrepancy.0, 0.0), Complex64::new(a.relative, 0.0));
        if self.pass != a.pass {
            out.push(format!("pass flag {} but recomputed {}", self.pass, a.pass));
        }
        if self.schema_version != REPORT_SCHEMA_VERSION {
            out.push(format!("schema version {} differs from {REPORT_SCHEMA_VERSION}", self.schema_version));
        }
        out
    }

    /// The report with timings zeroed, for byte comparisons.
    pub fn without_timings(&self) -> Self {
        VerificationReport { timings_ms: Timings::default(), ..self.clone() }
    }
}
