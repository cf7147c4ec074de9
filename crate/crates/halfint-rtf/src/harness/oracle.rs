//! Closed-form orbital integrals against the direct matrix-sum oracles.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

use super::{Complex17, Decimal17, HarnessError, InStage, Stage, Tolerances};
use crate::geometric::{j_dual, j_reg_partial, j_small, oracle_raw, OracleFamily, OracleLimits, RegComponent, SpectralPoint};
use crate::params::{OddSquare, Weight};
use crate::specfun::rel_err;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OracleCase {
    pub family: OracleFamily,
    pub weight: Weight,
    pub n: OddSquare,
    pub s: SpectralPoint,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleRow {
    pub case: OracleCase,
    pub raw: Complex17,
    pub closed: Complex17,
    /// Closed-form index range compared, for the regular families.
    pub m_range: Option<(u64, u64)>,
    pub rel_err: Decimal17,
    pub tol: Decimal17,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct OracleTable {
    pub rows: Vec<OracleRow>,
}

impl OracleTable {
    pub fn pass(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }

    /// Largest relative error per family.
    pub fn max_by_family(&self) -> BTreeMap<String, f64> {
        let mut out: BTreeMap<String, f64> = BTreeMap::new();
        for r in &self.rows {
            let e = out.entry(format!("{:?}", r.case.family)).or_insert(0.0);
            *e = e.max(r.rel_err.0);
        }
        out
    }
}

fn component(family: OracleFamily) -> Option<RegComponent> {
    match family {
        OracleFamily::Reg1 => Some(RegComponent::One),
        OracleFamily::Reg2 => Some(RegComponent::Two),
        OracleFamily::Reg3 => Some(RegComponent::Three),
        OracleFamily::Small | OracleFamily::Dual => None,
    }
}

pub fn tolerance_for(family: OracleFamily, tol: &Tolerances) -> f64 {
    match component(family) {
        Some(_) => tol.oracle_regular,
        None => tol.oracle_singular,
    }
}

/// One comparison. The regular families have closed forms at `s = 0` only.
pub fn run_oracle_case(case: OracleCase, limits: &OracleLimits, tol: &Tolerances) -> Result<OracleRow, HarnessError> {
    let OracleCase { family, weight: w, n, s } = case;
    let raw = oracle_raw(family, s, n, w, limits).stage(Stage::Oracle)?;
    let (closed, m_range) = match component(family) {
        None if family == OracleFamily::Small => (j_small(s, n, w).stage(Stage::Oracle)?, None),
        None => (j_dual(s, n, w).stage(Stage::Oracle)?, None),
        Some(comp) => {
            if s != SpectralPoint::ZERO {
                return Err(HarnessError::Precondition(format!("{family:?} is compared at s = 0 only")));
            }
            match raw.m_range {
                Some((lo, hi)) => (j_reg_partial(comp, n, w, lo, hi).stage(Stage::Oracle)?, Some((lo, hi))),
                None => (Complex64::new(0.0, 0.0), None),
            }
        }
    };
    let err = if raw.value == closed { 0.0 } else { rel_err(raw.value, closed) };
    let t = tolerance_for(family, tol);
    Ok(OracleRow { case, raw: raw.value.into(), closed: closed.into(), m_range, rel_err: Decimal17(err), tol: Decimal17(t), pass: err <= t })
}

pub fn run_oracle_suite(cases: &[OracleCase], limits: &OracleLimits, tol: &Tolerances) -> Result<OracleTable, HarnessError> {
    let rows = cases.iter().map(|&c| run_oracle_case(c, limits, tol)).collect::<Result<_, _>>()?;
    Ok(OracleTable { rows })
}

/// Singular families at `s = (0.6, 0.7), (0.8, 0.9)`, weight 13/2, `n = 1, 9`; regular families
/// at `s = 0`, weights 9/2 and 13/2, `n = 1, 9`.
pub fn default_oracle_grid() -> Vec<OracleCase> {
    let sq = |n: i64| OddSquare::new(n).expect("odd square");
    let wt = |w: u32| Weight::new(w).expect("valid weight");
    let mut out = Vec::new();
    for n in [1, 9] {
        for s in [SpectralPoint::real(0.6, 0.7), SpectralPoint::real(0.8, 0.9)] {
            for family in [OracleFamily::Small, OracleFamily::Dual] {
                out.push(OracleCase { family, weight: wt(13), n: sq(n), s });
            }
        }
    }
    for w in [9, 13] {
        for n in [1, 9] {
            for family in [OracleFamily::Reg1, OracleFamily::Reg2, OracleFamily::Reg3] {
                out.push(OracleCase { family, weight: wt(w), n: sq(n), s: SpectralPoint::ZERO });
            }
        }
    }
    out
}
