//! Regular orbital integrals at `s = 0`: hypergeometric m-sums over the three
//! families of full Bruhat cells.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{c_kappa, GeomConfig, GeometricError};
use crate::arithmetic::{self, gcd};
use crate::multiplier::{t_general, Mat2, VariantKind};
use crate::params::{OddSquare, Weight};
use crate::specfun::{beta, hyp2f1, i_pow, legendre_q, CompensatedSum, CutSide, QBranch};

/// The three regular families `m >= 1`, `m <= -(n+1)` and `-n < m < 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RegComponent {
    One,
    Two,
    Three,
}

impl RegComponent {
    pub const ALL: [RegComponent; 3] = [RegComponent::One, RegComponent::Two, RegComponent::Three];

    pub fn index(self) -> u8 {
        match self {
            RegComponent::One => 1,
            RegComponent::Two => 2,
            RegComponent::Three => 3,
        }
    }

    pub fn from_index(j: u8) -> Option<Self> {
        match j {
            1 => Some(RegComponent::One),
            2 => Some(RegComponent::Two),
            3 => Some(RegComponent::Three),
            _ => None,
        }
    }
}

/// A truncated m-sum completed by an estimated remainder.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RegValue {
    /// Partial sum plus tail correction.
    pub value: Complex64,
    pub m_max: u64,
    /// Partial sum over `1 <= m <= m_max`.
    pub partial: Complex64,
    /// Modulus of the tail correction.
    pub tail_estimate: f64,
}

/// `2 n^{kappa - 1} B(kappa/2, kappa/2)^2 / (i^{2 kappa} C_kappa)`.
pub fn reg_prefactor(n: OddSquare, w: Weight) -> Result<Complex64, GeometricError> {
    let k = w.kappa();
    let h = Complex64::new(k / 2.0, 0.0);
    let b = beta(h, h)?;
    Ok(b * b * 2.0 * (n.get() as f64).powf(k - 1.0) / (i_pow(Complex64::new(2.0 * k, 0.0)) * c_kappa(k)))
}

fn unit_power(gamma: Mat2, w: Weight) -> Result<Complex64, GeometricError> {
    Ok(t_general(gamma)?.pow(-(w.twice() as i64)).to_complex())
}

/// Pairs `(b, c)` with `bc = v`, `b, c >= 1`, `4 | c`.
fn level_pairs(v: u64) -> impl Iterator<Item = (i64, i64)> {
    arithmetic::divisors(v).into_iter().filter(|c| c % 4 == 0).map(move |c| ((v / c) as i64, c as i64))
}

fn primitive(a: i64, b: i64, c: i64, d: i64) -> bool {
    gcd(gcd(a, b), gcd(c, d)) == 1
}

/// The two variant parts of the multiplier weight of the closed-form term `m`:
/// `(t^{-2kappa} i^kappa, t_hat^{-2kappa} i^{-kappa})`, `(t_bar, t_under)` or `(t_left, t_right)`.
pub fn variant_weights(comp: RegComponent, n: i64, m: i64, w: Weight) -> Result<(Complex64, Complex64), GeometricError> {
    let k = Complex64::new(w.kappa(), 0.0);
    let (ad, bc) = match comp {
        RegComponent::One => (n + m, m),
        RegComponent::Two => (m, m + n),
        RegComponent::Three => (n - m, m),
    };
    let (kinds, phases) = match comp {
        RegComponent::One => ([None, Some(VariantKind::Hat)], [i_pow(k), i_pow(-k)]),
        RegComponent::Two => ([Some(VariantKind::Bar), Some(VariantKind::Under)], [Complex64::new(1.0, 0.0); 2]),
        RegComponent::Three => ([Some(VariantKind::IotaLeft), Some(VariantKind::IotaRight)], [Complex64::new(1.0, 0.0); 2]),
    };
    let mut acc = [Complex64::new(0.0, 0.0); 2];
    for a in arithmetic::divisors(ad as u64) {
        let a = a as i64;
        let d = ad / a;
        for (b, c) in level_pairs(bc as u64) {
            if !primitive(a, b, c, d) {
                continue;
            }
            let gamma = Mat2::new(a, b, c, d);
            for j in 0..2 {
                let g = kinds[j].map_or(gamma, |kind| gamma.variant(kind));
                acc[j] += unit_power(g, w)? * phases[j];
            }
        }
    }
    Ok((acc[0], acc[1]))
}

/// Multiplier weight of the closed-form term `m` of the given family.
pub fn multiplier_weight(comp: RegComponent, n: i64, m: i64, w: Weight) -> Result<Complex64, GeometricError> {
    let (first, second) = variant_weights(comp, n, m, w)?;
    Ok(first + second)
}

/// `F(kappa/2, kappa/2; kappa; x)` for `x` beyond 1 via the on-cut Legendre function:
/// `2 x^{-kappa/2} Q_{kappa/2 - 1}(2/x - 1) / B(kappa/2, kappa/2)`.
pub fn cut_hypergeometric(x: f64, w: Weight, side: CutSide) -> Result<Complex64, GeometricError> {
    let k = w.kappa();
    let branch = match side {
        CutSide::Above => QBranch::CutBelow,
        CutSide::Below => QBranch::CutAbove,
        CutSide::Mean => QBranch::CutMean,
    };
    let h = Complex64::new(k / 2.0, 0.0);
    let q = legendre_q(k / 2.0 - 1.0, 2.0 / x - 1.0, branch)?;
    Ok(q * 2.0 * x.powf(-k / 2.0) / beta(h, h)?)
}

/// Term `m` of the family without the common prefactor. In the third family the argument
/// `n/m` lies on the cut; the `a, d > 0` variants take the upper boundary value and the
/// `a, d < 0` variants the lower one.
pub fn reg_term(comp: RegComponent, n: OddSquare, m: u64, w: Weight) -> Result<Complex64, GeometricError> {
    let k = w.kappa();
    let nn = n.get() as f64;
    let (first, second) = variant_weights(comp, n.get(), m as i64, w)?;
    let zero = Complex64::new(0.0, 0.0);
    if first == zero && second == zero {
        return Ok(zero);
    }
    let h = Complex64::new(k / 2.0, 0.0);
    let mf = m as f64;
    Ok(match comp {
        RegComponent::One | RegComponent::Two => {
            hyp2f1(h, h, Complex64::new(k, 0.0), nn / (mf + nn))? * (mf + nn).powf(-k / 2.0) * (first + second)
        }
        RegComponent::Three => {
            let x = nn / mf;
            (cut_hypergeometric(x, w, CutSide::Above)? * first + cut_hypergeometric(x, w, CutSide::Below)? * second) * mf.powf(-k / 2.0)
        }
    })
}

fn sum_terms(comp: RegComponent, n: OddSquare, w: Weight, lo: u64, hi: u64) -> Result<Vec<Complex64>, GeometricError> {
    (lo..=hi).into_par_iter().map(|m| reg_term(comp, n, m, w)).collect()
}

/// Closed-form partial sum over `lo <= m <= hi`, prefactor included.
pub fn j_reg_partial(comp: RegComponent, n: OddSquare, w: Weight, lo: u64, hi: u64) -> Result<Complex64, GeometricError> {
    if lo > hi {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let terms = sum_terms(comp, n, w, lo, hi)?;
    Ok(terms.into_iter().collect::<CompensatedSum>().value() * reg_prefactor(n, w)?)
}

/// One regular family at `s = 0`. The infinite families are cut at `cfg.m_max` and completed
/// by a tail correction: the mean of `term(m) (m + n)^{kappa/2}` over the last half of the range
/// times the integral of `F (m + n)^{-kappa/2}` beyond the cut.
pub fn j_reg_component(comp: RegComponent, cfg: &GeomConfig) -> Result<RegValue, GeometricError> {
    let cfg = cfg.validated()?;
    let (n, w) = (cfg.n, cfg.weight);
    let k = w.kappa();
    let pref = reg_prefactor(n, w)?;
    if comp == RegComponent::Three {
        let hi = (n.get() - 1) as u64;
        let value = j_reg_partial(comp, n, w, 1, hi)?;
        return Ok(RegValue { value, m_max: hi, partial: value, tail_estimate: 0.0 });
    }
    let m_max = cfg.m_max;
    let terms = sum_terms(comp, n, w, 1, m_max)?;
    let partial = terms.iter().copied().collect::<CompensatedSum>().value() * pref;
    let nn = n.get() as f64;
    let half = (m_max / 2) as usize;
    let mean_weight = terms[half..]
        .iter()
        .enumerate()
        .map(|(i, t)| *t * ((half + i + 1) as f64 + nn).powf(k / 2.0))
        .collect::<CompensatedSum>()
        .value()
        / (terms.len() - half) as f64;
    let h = Complex64::new(k / 2.0, 0.0);
    let f_cut = hyp2f1(h, h, Complex64::new(k, 0.0), nn / (m_max as f64 + nn))?;
    let tail = pref * mean_weight * f_cut * (m_max as f64 + nn).powf(1.0 - k / 2.0) / (k / 2.0 - 1.0);
    let value = partial + tail;
    let tail_estimate = tail.norm();
    if tail_estimate > cfg.tail_tol * value.norm().max(f64::MIN_POSITIVE) {
        return Err(GeometricError::TailTooLarge { estimate: tail_estimate, tol: cfg.tail_tol * value.norm() });
    }
    Ok(RegValue { value, m_max, partial, tail_estimate })
}

/// `J_Reg(0, n)` as the sum of the three families.
pub fn j_reg(cfg: &GeomConfig) -> Result<[RegValue; 3], GeometricError> {
    Ok([
        j_reg_component(RegComponent::One, cfg)?,
        j_reg_component(RegComponent::Two, cfg)?,
        j_reg_component(RegComponent::Three, cfg)?,
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::{hyp2f1_cut, rel_err};

    fn w(x: u32) -> Weight {
        Weight::new(x).unwrap()
    }

    #[test]
    fn three_is_empty_for_n1() {
        let cfg = GeomConfig::new(w(13), OddSquare::ONE);
        let v = j_reg_component(RegComponent::Three, &cfg).unwrap();
        assert_eq!(v.value, Complex64::new(0.0, 0.0));
    }

    #[test]
    fn cut_hypergeometric_matches_connection_formula() {
        for x in [9.0 / 8.0, 9.0 / 4.0, 9.0, 25.0 / 7.0] {
            for side in [CutSide::Above, CutSide::Below, CutSide::Mean] {
                let legendre = cut_hypergeometric(x, w(13), side).unwrap();
                let direct = hyp2f1_cut(Complex64::new(3.25, 0.0), Complex64::new(3.25, 0.0), x, side).unwrap();
                assert!(rel_err(legendre, direct) < 1e-9, "x={x} {side:?}: {legendre} vs {direct}");
            }
        }
    }

    #[test]
    fn weights_are_sums_of_fourth_roots() {
        for m in 1..40 {
            let wt = multiplier_weight(RegComponent::One, 9, m, w(13)).unwrap();
            let count = arithmetic::divisors((9 + m) as u64).len() * level_pairs(m as u64).count();
            assert!(wt.norm() <= 2.0 * count as f64 + 1e-12);
        }
        assert_eq!(multiplier_weight(RegComponent::One, 1, 3, w(9)).unwrap(), Complex64::new(0.0, 0.0));
    }
}
