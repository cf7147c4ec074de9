//! Riemann and Hurwitz zeta functions and real primitive Dirichlet L-functions.

use num_complex::Complex64;

use super::{CompensatedSum, SpecfunError, BERNOULLI_EVEN};
use crate::arithmetic;

/// Stieltjes constants `gamma_0, ..., gamma_12`.
pub const STIELTJES: [f64; 13] = [
    0.577_215_664_901_532_9,
    -0.072_815_845_483_676_72,
    -0.009_690_363_192_872_318,
    0.002_053_834_420_303_346,
    0.002_325_370_065_467_3,
    0.000_793_323_817_301_062_7,
    -0.000_238_769_345_430_199_6,
    -0.000_527_289_567_057_751,
    -0.000_352_123_353_803_039_5,
    -0.000_034_394_774_418_088_05,
    0.000_205_332_814_909_064_8,
    0.000_270_184_439_543_903_5,
    0.000_167_272_912_105_140_2,
];

pub const LAURENT_RADIUS: f64 = 0.5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ZetaMode {
    /// Laurent series inside `|s - 1| < 1/2`, Euler-Maclaurin elsewhere.
    #[default]
    Auto,
    /// Laurent series with the Stieltjes constants.
    Laurent,
    /// Euler-Maclaurin summation.
    EulerMaclaurin,
}

fn expm1_over(t: Complex64) -> Complex64 {
    if t.norm() < 0.5 {
        let mut term = Complex64::new(1.0, 0.0);
        let mut acc = term;
        for k in 2..30 {
            term *= t / k as f64;
            acc += term;
        }
        acc
    } else {
        (t.exp() - 1.0) / t
    }
}

/// `zeta(s, a) - 1/(s - 1)` by Euler-Maclaurin with `n` explicit terms.
pub fn hurwitz_regular_with(s: Complex64, a: f64, n: usize) -> Complex64 {
    let mut acc = CompensatedSum::new();
    for k in 0..n {
        acc.add((-s * (k as f64 + a).ln()).exp());
    }
    let w = a + n as f64;
    let lw = w.ln();
    acc.add(-expm1_over(-(s - 1.0) * lw) * lw);
    let w_s = (-s * lw).exp();
    acc.add(w_s * 0.5);
    let inv_w2 = 1.0 / (w * w);
    let mut poch = s;
    let mut wp = w_s / w;
    let mut fact = 2.0;
    for (j, b) in BERNOULLI_EVEN.iter().enumerate() {
        let j = j as f64 + 1.0;
        acc.add(poch * wp * (b / fact));
        poch *= (s + 2.0 * j - 1.0) * (s + 2.0 * j);
        wp *= inv_w2;
        fact *= (2.0 * j + 1.0) * (2.0 * j + 2.0);
    }
    acc.value()
}

fn default_terms(s: Complex64) -> usize {
    (s.norm() + 12.0).ceil() as usize
}

/// `zeta(s, a) - 1/(s - 1)`, entire in `s`, for `a > 0`.
pub fn hurwitz_regular(s: Complex64, a: f64) -> Result<Complex64, SpecfunError> {
    if !(a > 0.0) {
        return Err(SpecfunError::Domain(format!("Hurwitz parameter must be positive, got {a}")));
    }
    Ok(hurwitz_regular_with(s, a, default_terms(s)))
}

/// Hurwitz zeta `sum_{k >= 0} (k + a)^{-s}`.
pub fn hurwitz_zeta(s: Complex64, a: f64) -> Result<Complex64, SpecfunError> {
    if s == Complex64::new(1.0, 0.0) {
        return Err(SpecfunError::Pole(s));
    }
    Ok(hurwitz_regular(s, a)? + (s - 1.0).inv())
}

/// `zeta(1 + u) - 1/u`, entire in `u`.
pub fn zeta_regular(u: Complex64) -> Complex64 {
    if u.norm() < LAURENT_RADIUS {
        laurent_regular(u)
    } else {
        hurwitz_regular_with(u + 1.0, 1.0, default_terms(u + 1.0))
    }
}

fn laurent_regular(u: Complex64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    let mut p = Complex64::new(1.0, 0.0);
    let mut fact = 1.0;
    for (k, g) in STIELTJES.iter().enumerate() {
        if k > 0 {
            fact *= k as f64;
        }
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        acc += p * (sign * g / fact);
        p *= u;
    }
    acc
}

/// Riemann zeta with the Laurent route near `s = 1`.
pub fn zeta(s: Complex64) -> Result<Complex64, SpecfunError> {
    zeta_mode(s, ZetaMode::Auto)
}

pub fn zeta_mode(s: Complex64, mode: ZetaMode) -> Result<Complex64, SpecfunError> {
    let u = s - 1.0;
    if u == Complex64::new(0.0, 0.0) {
        return Err(SpecfunError::Pole(s));
    }
    let reg = match mode {
        ZetaMode::Auto => zeta_regular(u),
        ZetaMode::Laurent => {
            if u.norm() >= LAURENT_RADIUS {
                return Err(SpecfunError::Domain(format!("Laurent mode needs |s - 1| < 1/2, got {s}")));
            }
            laurent_regular(u)
        }
        ZetaMode::EulerMaclaurin => hurwitz_regular_with(s, 1.0, default_terms(s)),
    };
    Ok(reg + u.inv())
}

/// `L(s, (./g))` for odd squarefree `g > 1`, as a combination of Hurwitz zeta values.
pub fn dirichlet_l(s: Complex64, g_star: i64) -> Result<Complex64, SpecfunError> {
    if g_star <= 1 || g_star % 2 == 0 || arithmetic::mobius(g_star as u64) == 0 {
        return Err(SpecfunError::Domain(format!("modulus {g_star} is not odd squarefree > 1")));
    }
    let gf = g_star as f64;
    let mut acc = CompensatedSum::new();
    for r in 1..g_star {
        let chi = arithmetic::jacobi(r, g_star).map_err(|e| SpecfunError::Domain(e.to_string()))?;
        if chi != 0 {
            acc.add(hurwitz_regular(s, r as f64 / gf)? * f64::from(chi));
        }
    }
    Ok(acc.value() * (-s * gf.ln()).exp())
}

#[cfg(test)]
mod tests {
    use super::super::{c, rel_err};
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn zeta_examples() {
        assert!(rel_err(zeta(c(2.0, 0.0)).unwrap(), c(PI * PI / 6.0, 0.0)) < 1e-14);
        assert!(rel_err(zeta(c(4.0, 0.0)).unwrap(), c(PI.powi(4) / 90.0, 0.0)) < 1e-14);
        assert!(rel_err(zeta(c(0.0, 0.0)).unwrap(), c(-0.5, 0.0)) < 1e-13);
        assert!(rel_err(zeta(c(-1.0, 0.0)).unwrap(), c(-1.0 / 12.0, 0.0)) < 1e-12);
        let near = 1.0 + 1e-6;
        let z = zeta(c(near, 0.0)).unwrap() - 1.0 / (near - 1.0);
        assert!((z.re - STIELTJES[0]).abs() < 1e-5);
        assert!(zeta(c(1.0, 0.0)).is_err());
        assert!(zeta_mode(c(2.0, 0.0), ZetaMode::Laurent).is_err());
    }

    #[test]
    fn euler_maclaurin_order_cross_check() {
        let s = c(1.37, 0.2);
        let a = hurwitz_regular_with(s, 1.0, 24) + (s - 1.0).inv();
        let b = hurwitz_regular_with(s, 1.0, 80) + (s - 1.0).inv();
        assert!(rel_err(a, b) < 1e-13);
        assert!(rel_err(zeta(s).unwrap(), b) < 1e-10);
    }

    #[test]
    fn laurent_matches_euler_maclaurin() {
        for k in 0..24 {
            let u = Complex64::from_polar(0.45, k as f64 * PI / 12.0);
            let em = hurwitz_regular_with(u + 1.0, 1.0, 40);
            assert!((laurent_regular(u) - em).norm() < 1e-12, "u={u}");
        }
        for u in [c(1e-9, 0.0), c(0.0, -1e-12), c(0.0, 0.0)] {
            let em = hurwitz_regular_with(u + 1.0, 1.0, 40);
            assert!((zeta_regular(u) - em).norm() < 1e-12);
        }
    }

    #[test]
    fn hurwitz_relations() {
        let s = c(2.3, -1.1);
        let total = hurwitz_zeta(s, 1.0 / 3.0).unwrap() + hurwitz_zeta(s, 2.0 / 3.0).unwrap() + hurwitz_zeta(s, 1.0).unwrap();
        let expect = zeta(s).unwrap() * (s * 3f64.ln()).exp();
        assert!(rel_err(total, expect) < 1e-12);
        let shift = hurwitz_zeta(s, 0.25).unwrap() - hurwitz_zeta(s, 1.25).unwrap();
        assert!(rel_err(shift, (-s * 0.25f64.ln()).exp()) < 1e-12);
    }

    fn direct_l(s: f64, g: i64, terms: i64) -> f64 {
        let mut acc = 0.0;
        let mut comp = 0.0;
        for m in 1..=terms {
            let x = f64::from(arithmetic::jacobi(m, g).unwrap()) * (m as f64).powf(-s) - comp;
            let t = acc + x;
            comp = (t - acc) - x;
            acc = t;
        }
        acc
    }

    #[test]
    fn dirichlet_examples() {
        assert!(dirichlet_l(c(1.5, 0.0), 1).is_err());
        assert!(dirichlet_l(c(1.5, 0.0), 9).is_err());
        let l13 = dirichlet_l(c(1.0, 0.0), 3).unwrap();
        assert!(rel_err(l13, c(PI / (3.0 * 3f64.sqrt()), 0.0)) < 1e-13);
        let terms = 3 * 3_333_333;
        let direct = direct_l(1.0, 3, terms);
        assert!((l13.re - direct).abs() < 1e-7);
        let l25 = dirichlet_l(c(2.0, 0.0), 5).unwrap();
        assert!((l25.re - direct_l(2.0, 5, 5_000_000)).abs() < 1e-8);
        assert!(rel_err(l25, c(4.0 * PI * PI / (25.0 * 5f64.sqrt()), 0.0)) < 1e-12);
    }

    #[test]
    fn functional_equation_real_character() {
        for g in [3i64, 5, 7, 15, 105] {
            let chi_m1 = arithmetic::jacobi(-1, g).unwrap();
            let delta = if chi_m1 == 1 { 0.0 } else { 1.0 };
            for s in [c(0.3, 0.2), c(0.7, -0.5), c(1.0, 0.0)] {
                let lhs = dirichlet_l(1.0 - s, g).unwrap();
                let gs = super::super::gamma_c(s).unwrap();
                let rhs = (-s * PI.ln()).exp()
                    * ((1.0 - s) * 2f64.ln()).exp()
                    * ((s - 0.5) * (g as f64).ln()).exp()
                    * gs
                    * ((s - delta) * PI / 2.0).cos()
                    * dirichlet_l(s, g).unwrap();
                assert!((lhs - rhs).norm() < 1e-11 * rhs.norm().max(1.0), "g={g} s={s}: {lhs} vs {rhs}");
            }
        }
    }
}
