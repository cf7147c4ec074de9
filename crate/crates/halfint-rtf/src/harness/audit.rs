//! Exact audits: closed-form multipliers against the cocycle route, and the Bruhat partition
//! of boxed `G_4(n)` matrices.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};

use super::HarnessError;
use crate::arithmetic::{divisors, gcd3, is_odd_square};
use crate::cosets::{classify, enumerate_cell, regular_tag, CellTag};
use crate::multiplier::{t_general, t_lower_closed, t_upper_closed, FourthRoot, Mat2};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditMismatch {
    pub gamma: Mat2,
    pub closed: FourthRoot,
    pub general: FourthRoot,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiplierAudit {
    pub nmax: i64,
    pub mmax: i64,
    pub upper_checked: usize,
    pub lower_checked: usize,
    pub mismatches: Vec<AuditMismatch>,
}

impl MultiplierAudit {
    pub fn pass(&self) -> bool {
        self.mismatches.is_empty() && self.upper_checked > 0
    }
}

fn audit_one(a: i64, d: i64, m: i64) -> Result<(usize, usize, Vec<AuditMismatch>), HarnessError> {
    let mut bad = Vec::new();
    let upper = Mat2::upper(a, m, d);
    let (closed, general) = (t_upper_closed(a, d, m)?, t_general(upper)?);
    if closed != general {
        bad.push(AuditMismatch { gamma: upper, closed, general });
    }
    if m == 0 || m % 4 != 0 {
        return Ok((1, 0, bad));
    }
    let lower = Mat2::lower(a, m, d);
    let (closed, general) = (t_lower_closed(a, d, m)?, t_general(lower)?);
    if closed != general {
        bad.push(AuditMismatch { gamma: lower, closed, general });
    }
    Ok((1, 1, bad))
}

/// Compares `t_upper_closed` and `t_lower_closed` with `t_general` for every odd square
/// `n <= nmax`, `ad = n` with `a, d > 0`, and `|m| <= mmax` with `gcd(a, d, m) = 1`.
pub fn multiplier_audit(nmax: i64, mmax: i64) -> Result<MultiplierAudit, HarnessError> {
    if nmax < 1 || mmax < 0 {
        return Err(HarnessError::Precondition(format!("audit bounds nmax={nmax}, mmax={mmax}")));
    }
    let mut triples = Vec::new();
    for n in (1..=nmax).filter(|&n| is_odd_square(n)) {
        for a in divisors(n as u64) {
            let a = a as i64;
            triples.extend((-mmax..=mmax).filter(|&m| gcd3(a, n / a, m) == 1).map(|m| (a, n / a, m)));
        }
    }
    let parts: Result<Vec<_>, HarnessError> = triples.par_iter().map(|&(a, d, m)| audit_one(a, d, m)).collect();
    let mut audit = MultiplierAudit { nmax, mmax, upper_checked: 0, lower_checked: 0, mismatches: Vec::new() };
    for (u, l, bad) in parts? {
        audit.upper_checked += u;
        audit.lower_checked += l;
        audit.mismatches.extend(bad);
    }
    Ok(audit)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionAudit {
    pub n: i64,
    pub bound: i64,
    /// Matrices found by scanning the box.
    pub boxed: usize,
    /// Matrices in the box rebuilt from the cell parametrizations.
    pub rebuilt: usize,
    pub per_cell: BTreeMap<String, usize>,
    /// Rebuilt matrices produced by more than one cell.
    pub duplicates: usize,
    /// Enumerated matrices whose classification disagrees with the enumerating cell.
    pub misclassified: usize,
    /// Size of the symmetric difference of the scanned and rebuilt sets.
    pub missing: usize,
}

impl PartitionAudit {
    pub fn pass(&self) -> bool {
        self.duplicates == 0 && self.misclassified == 0 && self.missing == 0 && self.boxed == self.rebuilt
    }
}

fn box_scan(n: i64, bound: i64) -> BTreeSet<Mat2> {
    let mut out = BTreeSet::new();
    for a in (-bound..=bound).filter(|&a| a != 0) {
        for b in -bound..=bound {
            for c in (-bound..=bound).filter(|c| c % 4 == 0) {
                let num = n + b * c;
                if num % a != 0 {
                    continue;
                }
                let g = Mat2::new(a, b, c, num / a);
                if g.d.abs() <= bound && g.is_primitive() {
                    out.insert(g);
                }
            }
        }
    }
    out
}

fn cell_name(tag: CellTag) -> String {
    format!("{tag:?}")
}

/// Every primitive determinant-`n` matrix with `4 | c` and entries bounded by `bound` lies in
/// exactly one Bruhat cell, and the cell enumerations rebuild the boxed set.
pub fn bruhat_partition(n: i64, bound: i64) -> Result<PartitionAudit, HarnessError> {
    if !is_odd_square(n) || bound < 1 {
        return Err(HarnessError::Precondition(format!("partition needs an odd square n and a positive bound, got {n}, {bound}")));
    }
    let scanned = box_scan(n, bound);
    let in_box = |g: &Mat2| [g.a, g.b, g.c, g.d].iter().all(|e| e.abs() <= bound);
    let mut rebuilt = BTreeSet::new();
    let mut per_cell: BTreeMap<String, usize> = BTreeMap::new();
    let (mut duplicates, mut misclassified) = (0, 0);
    let mut record = |g: Mat2, tag: CellTag, rebuilt: &mut BTreeSet<Mat2>| {
        if !rebuilt.insert(g) {
            duplicates += 1;
        }
        *per_cell.entry(cell_name(tag)).or_default() += 1;
    };
    for a in divisors(n as u64) {
        let a = a as i64;
        for (a, d) in [(a, n / a), (-a, -(n / a))] {
            for m in (-bound..=bound).filter(|&m| gcd3(a, d, m) == 1) {
                record(Mat2::upper(a, m, d), CellTag::Upper, &mut rebuilt);
                if m != 0 && m % 4 == 0 {
                    record(Mat2::lower(a, m, d), CellTag::Lower, &mut rebuilt);
                }
            }
        }
    }
    for m in (-bound * bound..=bound * bound).filter(|&m| m != 0 && m != -n) {
        let tag = regular_tag(n, m).ok_or_else(|| HarnessError::Precondition(format!("no regular cell for m={m}")))?;
        for g in enumerate_cell(n, m)? {
            if classify(g, n)?.tag() != tag {
                misclassified += 1;
            }
            if in_box(&g) {
                record(g, tag, &mut rebuilt);
            }
        }
    }
    for g in &scanned {
        let tag = classify(*g, n)?.tag();
        let parametrized = match tag {
            CellTag::Upper => g.c == 0,
            CellTag::Lower => g.b == 0 && g.c != 0,
            _ => regular_tag(n, g.b * g.c) == Some(tag),
        };
        if !parametrized {
            misclassified += 1;
        }
    }
    let missing = scanned.symmetric_difference(&rebuilt).count();
    Ok(PartitionAudit { n, bound, boxed: scanned.len(), rebuilt: rebuilt.len(), per_cell, duplicates, misclassified, missing })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_audit_is_clean() {
        let a = multiplier_audit(25, 40).unwrap();
        assert!(a.pass(), "{:?}", a.mismatches);
        assert!(a.lower_checked > 0);
        assert!(multiplier_audit(0, 3).is_err());
    }

    #[test]
    fn partition_small_box() {
        let p = bruhat_partition(9, 16).unwrap();
        assert!(p.pass(), "{p:?}");
        assert_eq!(p.per_cell.values().sum::<usize>(), p.boxed);
        assert!(bruhat_partition(4, 10).is_err());
    }
}
