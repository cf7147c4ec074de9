//! Spectral side against singular plus regular orbital integrals at `s = 0`.

use num_complex::Complex64;
use std::time::Instant;

use super::cache::{remember, spectral_data, Cache};
use super::report::{assess, ConfigEcho, ErrorBudgets, GeometricSide, RegItem, SpectralSide, Timings, VerificationReport, REPORT_SCHEMA_VERSION};
use super::{Decimal17, HarnessError, InStage, Stage};
use crate::geometric::{j_reg, j_sing, GeomConfig, SpectralPoint};
use crate::params::{OddSquare, Weight};
use crate::spectral::moment::{spectral_prefactor, SpectralConfig};

pub const VERIFY_INDICES: [i64; 4] = [1, 9, 25, 81];

fn elapsed_ms(t: Instant) -> u64 {
    t.elapsed().as_millis() as u64
}

pub fn check_preconditions(w: Weight, n: OddSquare, tol: f64) -> Result<(), HarnessError> {
    if !(9..=29).contains(&w.twice()) {
        return Err(HarnessError::Precondition(format!("kappa {w} outside 9/2..29/2")));
    }
    if !VERIFY_INDICES.contains(&n.get()) {
        return Err(HarnessError::Precondition(format!("n = {n} not in {VERIFY_INDICES:?}")));
    }
    if !(tol > 0.0) {
        return Err(HarnessError::Precondition(format!("tolerance {tol} must be positive")));
    }
    Ok(())
}

pub fn run_verify(w: Weight, n: OddSquare, tol: f64, cache: Option<&Cache>) -> Result<VerificationReport, HarnessError> {
    run_verify_with(SpectralConfig::new(w, n), GeomConfig::new(w, n), tol, cache)
}

/// `run_verify` with explicit stage configurations.
pub fn run_verify_with(spec_cfg: SpectralConfig, geo_cfg: GeomConfig, tol: f64, cache: Option<&Cache>) -> Result<VerificationReport, HarnessError> {
    let (w, n) = (geo_cfg.weight, geo_cfg.n);
    check_preconditions(w, n, tol)?;
    if spec_cfg.weight != w || spec_cfg.max_hecke < n {
        return Err(HarnessError::Precondition("spectral and geometric configurations disagree".into()));
    }
    let s0 = SpectralPoint::ZERO;

    let t = Instant::now();
    let mut data = spectral_data(spec_cfg, cache)?;
    let basis_free = data.moment_basis_free(s0, n).stage(Stage::Spectral)?;
    let eigen = data.moment_eigen(n).stage(Stage::Spectral)?;
    let prefactor = spectral_prefactor(s0, w).stage(Stage::Spectral)?;
    remember(&data, cache)?;
    let spectral_ms = elapsed_ms(t);

    let t = Instant::now();
    let sing = j_sing(s0, n, w, geo_cfg.contour_nodes).stage(Stage::Singular)?;
    let sing_coarse = j_sing(s0, n, w, geo_cfg.contour_nodes / 2).stage(Stage::Singular)?;
    let singular_ms = elapsed_ms(t);

    let t = Instant::now();
    let reg = j_reg(&geo_cfg).stage(Stage::Regular)?;
    let regular_ms = elapsed_ms(t);

    let reg_values: Vec<Complex64> = reg.iter().map(|r| r.value).collect();
    let a = assess(prefactor, basis_free, sing, &reg_values, tol);
    let scale = a.geometric.norm();
    let route = (basis_free.re - eigen).abs() / eigen.abs();
    let contour = (sing - sing_coarse).norm() / scale;
    let tail = reg.iter().map(|r| r.tail_estimate).sum::<f64>() / scale;
    let gram = data.gram.error_estimate;

    Ok(VerificationReport {
        schema_version: REPORT_SCHEMA_VERSION,
        kappa: w.to_string(),
        n: n.get(),
        tolerance: Decimal17(tol),
        spectral: SpectralSide {
            value: a.spectral.into(),
            prefactor: prefactor.into(),
            basis_free: basis_free.into(),
            eigen: Decimal17(eigen),
            route_discrepancy: Decimal17(route),
            dim: data.basis.dim(),
            truncation: data.basis.truncation(),
            gram_error_estimate: Decimal17(gram),
        },
        geometric: GeometricSide {
            j_sing: sing.into(),
            j_sing_coarse: sing_coarse.into(),
            reg: reg.iter().enumerate().map(|(j, r)| RegItem::new(j as u8 + 1, r)).collect(),
            total: a.geometric.into(),
        },
        absolute_discrepancy: Decimal17(a.absolute),
        relative_discrepancy: Decimal17(a.relative),
        pass: a.pass,
        budgets: ErrorBudgets {
            gram_quadrature: Decimal17(gram),
            spectral_routes: Decimal17(route),
            contour: Decimal17(contour),
            regular_tail: Decimal17(tail),
            total: Decimal17(gram + route + contour + tail),
        },
        config: ConfigEcho { spectral: spec_cfg, geometric: geo_cfg },
        timings_ms: Timings { spectral_ms, singular_ms, regular_ms },
    })
}
