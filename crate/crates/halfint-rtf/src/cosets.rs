//! Hecke coset representatives, the Gamma0(4) Smith factorization and the
//! Bruhat cells of the double coset of `diag(1, n)`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arithmetic::{self, gcd, gcd3};
use crate::multiplier::Mat2;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CosetError {
    #[error("{0} is not an odd square")]
    NotOddSquare(i64),
    #[error("invalid parameters a={a}, d={d}, m={m}")]
    BadParameters { a: i64, d: i64, m: i64 },
    #[error("no suitable prime found within {0} steps")]
    PrimeSearchExhausted(u64),
    #[error("matrix {0} does not lie in G4({1})")]
    NotInG4(Mat2, i64),
    #[error("cell parameter m={0} is excluded")]
    ExcludedM(i64),
}

pub const PRIME_SEARCH_BOUND: u64 = 1_000_000;

fn require_odd_square(n: i64) -> Result<(), CosetError> {
    if arithmetic::is_odd_square(n) {
        Ok(())
    } else {
        Err(CosetError::NotOddSquare(n))
    }
}

/// Right coset representatives `(a, m; 0, d)` with `ad = n`, `0 <= m < d`,
/// `gcd(a, d, m) = 1`, ordered by `(a, m)`.
pub fn hecke_reps(n: i64) -> Result<Vec<Mat2>, CosetError> {
    require_odd_square(n)?;
    let mut out = Vec::new();
    for a in arithmetic::divisors(n as u64) {
        let a = a as i64;
        let d = n / a;
        out.extend((0..d).filter(|&m| gcd3(a, d, m) == 1).map(|m| Mat2::upper(a, m, d)));
    }
    Ok(out)
}

/// Expected number of Hecke representatives, `n prod_{p | n} (1 + 1/p)`.
pub fn hecke_rep_count(n: i64) -> Result<u64, CosetError> {
    require_odd_square(n)?;
    let f = arithmetic::factorize(n).map_err(|_| CosetError::NotOddSquare(n))?;
    Ok(f.primes().fold(n as u64, |acc, p| acc / p * (p + 1)))
}

/// Factorization `(a, m; 0, d) = gamma1 diag(1, ad) gamma2` with
/// `gamma1 = (as - 4rm, -y; -4dr, x)` and `gamma2 = (ax, g1; 4r, s)`,
/// where `x` is a prime `= 1 mod 4` coprime to `d`.
pub fn smith_decompose(a: i64, d: i64, m: i64) -> Result<(Mat2, Mat2), CosetError> {
    let bad = CosetError::BadParameters { a, d, m };
    if a <= 0 || d <= 0 || !arithmetic::is_odd_square(a * d) || gcd3(a, d, m) != 1 {
        return Err(bad);
    }
    let g1 = gcd(m, d);
    let (mr, dr) = (m / g1, d / g1);
    let (_, x0, y0) = arithmetic::ext_gcd(mr, dr);
    let start = if x0 > 0 { 0 } else { (-x0) / dr + 1 };
    let mut found = None;
    for step in 0..PRIME_SEARCH_BOUND as i64 {
        let t = start + step;
        let x = x0 + t * dr;
        if x > 0 && x % 4 == 1 && gcd(x, d) == 1 && arithmetic::is_prime(x as u64) {
            found = Some((x, y0 - t * mr));
            break;
        }
    }
    let (x, y) = found.ok_or(CosetError::PrimeSearchExhausted(PRIME_SEARCH_BOUND))?;
    let (g, s, r_neg) = arithmetic::ext_gcd(a * x, 4 * g1);
    if g != 1 {
        return Err(bad);
    }
    let r = -r_neg;
    let gamma1 = Mat2::new(a * s - 4 * r * m, -y, -4 * d * r, x);
    let gamma2 = Mat2::new(a * x, g1, 4 * r, s);
    Ok((gamma1, gamma2))
}

/// Cell of the Bruhat decomposition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CellTag {
    Upper,
    Lower,
    Omega1,
    Omega2,
    Omega3,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BruhatCell {
    /// `(a, m; 0, d)`, `ad = n`.
    Upper { a: i64, d: i64, m: i64 },
    /// `(a, 0; m, d)`, `ad = n`, `m` a nonzero multiple of 4.
    Lower { a: i64, d: i64, m: i64 },
    /// All entries nonzero, `ad = n + m`, `bc = m`.
    Regular { tag: CellTag, m: i64, gamma: Mat2 },
}

impl BruhatCell {
    pub fn tag(&self) -> CellTag {
        match self {
            BruhatCell::Upper { .. } => CellTag::Upper,
            BruhatCell::Lower { .. } => CellTag::Lower,
            BruhatCell::Regular { tag, .. } => *tag,
        }
    }
}

/// Regular cell tag for the parameter `m = bc`.
pub fn regular_tag(n: i64, m: i64) -> Option<CellTag> {
    if m > 0 {
        Some(CellTag::Omega1)
    } else if m <= -(n + 1) {
        Some(CellTag::Omega2)
    } else if m < 0 && m > -n {
        Some(CellTag::Omega3)
    } else {
        None
    }
}

pub fn classify(gamma: Mat2, n: i64) -> Result<BruhatCell, CosetError> {
    if !gamma.in_g4(n) {
        return Err(CosetError::NotInG4(gamma, n));
    }
    let Mat2 { a, b, c, d } = gamma;
    if c == 0 {
        return Ok(BruhatCell::Upper { a, d, m: b });
    }
    if b == 0 {
        return Ok(BruhatCell::Lower { a, d, m: c });
    }
    let m = b * c;
    let tag = regular_tag(n, m).ok_or(CosetError::NotInG4(gamma, n))?;
    if a == 0 || d == 0 {
        return Err(CosetError::NotInG4(gamma, n));
    }
    Ok(BruhatCell::Regular { tag, m, gamma })
}

fn signed_divisor_pairs(v: i64) -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    for p in arithmetic::divisors(v.unsigned_abs()) {
        let p = p as i64;
        let q = v / p;
        out.push((p, q));
        out.push((-p, -q));
    }
    out
}

/// All primitive `(a, b; c, d)` with `ad = n + m`, `bc = m`, `4 | c`,
/// in lexicographic order.
pub fn enumerate_cell(n: i64, m: i64) -> Result<Vec<Mat2>, CosetError> {
    if m == 0 || m == -n {
        return Err(CosetError::ExcludedM(m));
    }
    let mut out = Vec::new();
    for (a, d) in signed_divisor_pairs(n + m) {
        for (b, c) in signed_divisor_pairs(m) {
            if c % 4 == 0 && gcd(gcd(a, b), gcd(c, d)) == 1 {
                out.push(Mat2::new(a, b, c, d));
            }
        }
    }
    out.sort_unstable();
    Ok(out)
}

/// Matrices of `Omega_j` with `c > 0` and `a > 0`, one from each
/// `{gamma, -gamma}` pair.
pub fn enumerate_cell_positive(n: i64, m: i64) -> Result<Vec<Mat2>, CosetError> {
    Ok(enumerate_cell(n, m)?.into_iter().filter(|g| g.c > 0).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    #[test]
    fn hecke_rep_examples() {
        assert_eq!(hecke_reps(1).unwrap(), vec![Mat2::IDENTITY]);
        assert_eq!(hecke_reps(9).unwrap().len(), 12);
        assert_eq!(hecke_reps(25).unwrap().len(), 30);
        assert!(hecke_reps(3).is_err());
        assert!(hecke_reps(4).is_err());
        for n in [1i64, 9, 25, 49, 81, 121, 169, 225] {
            assert_eq!(hecke_reps(n).unwrap().len() as u64, hecke_rep_count(n).unwrap());
        }
    }

    #[test]
    fn hecke_reps_inequivalent() {
        for r in (1..=15i64).step_by(2) {
            let n = r * r;
            let reps = hecke_reps(n).unwrap();
            for (i, p) in reps.iter().enumerate() {
                for (j, q) in reps.iter().enumerate() {
                    let prod = *p * q.adjugate();
                    let integral = [prod.a, prod.b, prod.c, prod.d].iter().all(|e| e % n == 0);
                    let equivalent = integral && (prod.c / n) % 4 == 0;
                    assert_eq!(equivalent, i == j, "n={n} {p} {q}");
                }
            }
        }
    }

    #[test]
    fn smith_examples() {
        assert_eq!(smith_decompose(1, 1, 0).unwrap().0.det(), 1);
        let (g1, g2) = smith_decompose(1, 1, 0).unwrap();
        assert_eq!(g1 * Mat2::new(1, 0, 0, 1) * g2, Mat2::IDENTITY);
        let (g1, g2) = smith_decompose(3, 3, 1).unwrap();
        assert_eq!(g1 * Mat2::new(1, 0, 0, 9) * g2, Mat2::upper(3, 1, 3));
        let (_, g2) = smith_decompose(9, 1, 0).unwrap();
        assert!(g2.in_gamma0_4());
    }

    #[test]
    fn smith_product_identity() {
        for r in (1..=15i64).step_by(2) {
            let n = r * r;
            for a in arithmetic::divisors(n as u64) {
                let a = a as i64;
                let d = n / a;
                for m in 0..4 * d {
                    if gcd3(a, d, m) != 1 {
                        continue;
                    }
                    let (g1, g2) = smith_decompose(a, d, m).unwrap();
                    assert!(g1.in_gamma0_4() && g2.in_gamma0_4());
                    assert_eq!(g1 * Mat2::new(1, 0, 0, n) * g2, Mat2::upper(a, m, d));
                    assert!(arithmetic::is_prime(g1.d as u64) && g1.d % 4 == 1);
                }
            }
        }
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify(Mat2::new(1, 5, 0, 1), 1).unwrap().tag(), CellTag::Upper);
        assert_eq!(classify(Mat2::new(1, 0, 4, 1), 1).unwrap().tag(), CellTag::Lower);
        let c = classify(Mat2::new(1, 1, 4, 5), 1).unwrap();
        assert_eq!(c, BruhatCell::Regular { tag: CellTag::Omega1, m: 4, gamma: Mat2::new(1, 1, 4, 5) });
        assert!(classify(Mat2::new(1, 1, 2, 3), 1).is_err());
        assert!(enumerate_cell(1, -1).is_err());
        assert!(enumerate_cell(1, 4).unwrap().contains(&Mat2::new(1, 1, 4, 5)));
        assert!(enumerate_cell(9, -5).unwrap().is_empty());
        let cell = enumerate_cell(9, -8).unwrap();
        assert!(!cell.is_empty());
        assert!(cell.iter().all(|g| g.a * g.d == 1 && g.b * g.c == -8 && g.c % 4 == 0));
        assert!(cell.windows(2).all(|w| w[0] < w[1]));
    }

    fn box_scan(n: i64, bound: i64) -> BTreeSet<Mat2> {
        let mut out = BTreeSet::new();
        for a in -bound..=bound {
            if a == 0 {
                continue;
            }
            for b in -bound..=bound {
                for c in (-bound..=bound).filter(|c| c % 4 == 0) {
                    let num = n + b * c;
                    if num % a != 0 {
                        continue;
                    }
                    let d = num / a;
                    let g = Mat2::new(a, b, c, d);
                    if d.abs() <= bound && g.is_primitive() {
                        out.insert(g);
                    }
                }
            }
        }
        out
    }

    #[test]
    fn bruhat_partition_round_trip() {
        let bound = 60;
        for n in [1i64, 9, 25] {
            let scanned = box_scan(n, bound);
            let in_box = |g: &Mat2| [g.a, g.b, g.c, g.d].iter().all(|e| e.abs() <= bound);
            let mut rebuilt = BTreeSet::new();
            for a in arithmetic::divisors(n as u64) {
                let a = a as i64;
                let d = n / a;
                for (a, d) in [(a, d), (-a, -d)] {
                    for m in -bound..=bound {
                        if gcd3(a, d, m) == 1 {
                            rebuilt.insert(Mat2::upper(a, m, d));
                            if m != 0 && m % 4 == 0 {
                                rebuilt.insert(Mat2::lower(a, m, d));
                            }
                        }
                    }
                }
            }
            for m in -bound * bound..=bound * bound {
                if m == 0 || m == -n {
                    continue;
                }
                for g in enumerate_cell(n, m).unwrap() {
                    assert_eq!(classify(g, n).unwrap().tag(), regular_tag(n, m).unwrap());
                    if in_box(&g) {
                        assert!(rebuilt.insert(g), "duplicate {g}");
                    }
                }
            }
            assert_eq!(scanned, rebuilt, "n={n}");
            for g in &scanned {
                let cell = classify(*g, n).unwrap();
                let count = [CellTag::Upper, CellTag::Lower, CellTag::Omega1, CellTag::Omega2, CellTag::Omega3]
                    .iter()
                    .filter(|&&t| t == cell.tag())
                    .count();
                assert_eq!(count, 1);
            }
        }
    }
}
