//! Exact integer arithmetic: factorizations, quadratic symbols, square parts
//! and the character sums that appear in the singular orbital integrals.

use num_complex::Complex64;
use std::f64::consts::PI;
use thiserror::Error;

use crate::multiplier::FourthRoot;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArithmeticError {
    #[error("expected a positive integer, got {0}")]
    NotPositive(i64),
    #[error("expected an odd integer, got {0}")]
    NotOdd(i64),
    #[error("input {0} exceeds the supported range")]
    OutOfRange(u64),
}

/// Prime factorization, primes strictly increasing.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Factorization {
    factors: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }

    pub fn value(&self) -> u64 {
        self.factors.iter().map(|&(p, e)| p.pow(e)).product()
    }

    pub fn is_square(&self) -> bool {
        self.factors.iter().all(|&(_, e)| e % 2 == 0)
    }

    /// All positive divisors in increasing order.
    pub fn divisors(&self) -> Vec<u64> {
        let mut out = vec![1u64];
        for &(p, e) in &self.factors {
            let len = out.len();
            let mut pk = 1u64;
            for _ in 0..e {
                pk *= p;
                for i in 0..len {
                    out.push(out[i] * pk);
                }
            }
        }
        out.sort_unstable();
        out
    }
}

pub const FACTORIZE_LIMIT: u64 = 1_000_000_000_000;

/// Trial-division factorization for `1 <= n <= 10^12`.
pub fn factorize(n: i64) -> Result<Factorization, ArithmeticError> {
    if n <= 0 {
        return Err(ArithmeticError::NotPositive(n));
    }
    let mut n = n as u64;
    if n > FACTORIZE_LIMIT {
        return Err(ArithmeticError::OutOfRange(n));
    }
    let mut factors = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            factors.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        factors.push((n, 1));
    }
    Ok(Factorization { factors })
}

/// Positive divisors of `n >= 1`.
pub fn divisors(n: u64) -> Vec<u64> {
    factorize(n as i64).map(|f| f.divisors()).unwrap_or_default()
}

pub fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a as i64
}

pub fn gcd3(a: i64, b: i64, c: i64) -> i64 {
    gcd(gcd(a, b), c)
}

/// Extended Euclid: returns `(g, x, y)` with `a x + b y = g >= 0`.
pub fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    let (mut r0, mut r1) = (a as i128, b as i128);
    let (mut s0, mut s1) = (1i128, 0i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 < 0 {
        (r0, s0, t0) = (-r0, -s0, -t0);
    }
    (r0 as i64, s0 as i64, t0 as i64)
}

/// Inverse of `a` modulo `m > 0`, if it exists.
pub fn mod_inverse(a: i64, m: i64) -> Option<i64> {
    let (g, x, _) = ext_gcd(a.rem_euclid(m), m);
    (g == 1).then(|| x.rem_euclid(m))
}

pub fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

pub fn is_square(n: i64) -> bool {
    n >= 0 && {
        let r = isqrt(n as u64);
        r * r == n as u64
    }
}

pub fn is_odd_square(n: i64) -> bool {
    n > 0 && n % 2 == 1 && is_square(n)
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1u64 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    r
}

/// Deterministic Miller-Rabin, exact for all 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Moebius function.
pub fn mobius(n: u64) -> i64 {
    match factorize(n as i64) {
        Ok(f) if f.factors().iter().all(|&(_, e)| e == 1) => {
            if f.factors().len() % 2 == 0 {
                1
            } else {
                -1
            }
        }
        _ => 0,
    }
}

/// Jacobi symbol `(c/d)` for odd `d` of either sign, with `(c/d) = (-c/-d)`
/// and `(0/d) = 1`.
pub fn jacobi(c: i64, d: i64) -> Result<i8, ArithmeticError> {
    if d % 2 == 0 {
        return Err(ArithmeticError::NotOdd(d));
    }
    if c == 0 {
        return Ok(1);
    }
    let (c, d) = if d < 0 { (-c, -d) } else { (c, d) };
    Ok(jacobi_positive(c, d as u64))
}

/// Classical Jacobi symbol for odd positive modulus.
fn jacobi_positive(c: i64, d: u64) -> i8 {
    let mut a = c.rem_euclid(d as i64) as u64;
    let mut n = d;
    let mut sign = 1i8;
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            if n % 8 == 3 || n % 8 == 5 {
                sign = -sign;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            sign = -sign;
        }
        a %= n;
    }
    if n == 1 {
        sign
    } else {
        0
    }
}

/// `eps(d)` is 1 for `d = 1 mod 4` and `i` for `d = 3 mod 4`.
pub fn eps(d: i64) -> Result<FourthRoot, ArithmeticError> {
    match d.rem_euclid(4) {
        1 => Ok(FourthRoot::ONE),
        3 => Ok(FourthRoot::I),
        _ => Err(ArithmeticError::NotOdd(d)),
    }
}

/// Square-part decomposition `g = g_star * g_prime^2`, `rad = g_star * g0`, `g = rad * g2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SquareParts {
    pub g: u64,
    pub g_star: u64,
    pub g_prime: u64,
    pub rad: u64,
    pub g0: u64,
    pub g2: u64,
}

impl SquareParts {
    pub fn is_square(&self) -> bool {
        self.g_star == 1
    }
}

pub fn square_parts(g: i64) -> Result<SquareParts, ArithmeticError> {
    let f = factorize(g)?;
    let mut g_star = 1;
    let mut g_prime = 1;
    let mut rad = 1;
    for &(p, e) in f.factors() {
        rad *= p;
        if e % 2 == 1 {
            g_star *= p;
        }
        g_prime *= p.pow(e / 2);
    }
    let g = g as u64;
    Ok(SquareParts { g, g_star, g_prime, rad, g0: rad / g_star, g2: g / rad })
}

/// `exp(2 pi i num/den)` with the argument reduced modulo 1 exactly.
pub fn e_frac(num: i64, den: i64) -> Complex64 {
    let r = (num as i128).rem_euclid(den as i128) as f64 / den as f64;
    Complex64::from_polar(1.0, 2.0 * PI * r)
}

pub const DIRECT_SUM_CAP: u64 = 100_000;

/// `sum_{r mod g, (r,g)=1} (r/g) e(rm/g)` by direct summation.
pub fn char_sum_direct(m: i64, g: i64) -> Result<Complex64, ArithmeticError> {
    if g <= 0 {
        return Err(ArithmeticError::NotPositive(g));
    }
    if g % 2 == 0 {
        return Err(ArithmeticError::NotOdd(g));
    }
    if g as u64 > DIRECT_SUM_CAP {
        return Err(ArithmeticError::OutOfRange(g as u64));
    }
    let mut acc = Complex64::new(0.0, 0.0);
    for r in 0..g {
        if gcd(r, g) == 1 {
            acc += e_frac(r * m, g) * f64::from(jacobi(r, g)?);
        }
    }
    Ok(acc)
}

/// The same sum through the factorization into a Gauss sum of the primitive
/// character and a Ramanujan sum.
pub fn char_sum_factored(m: i64, g: i64) -> Result<Complex64, ArithmeticError> {
    if g % 2 == 0 {
        return Err(ArithmeticError::NotOdd(g));
    }
    let sp = square_parts(g)?;
    let g2 = sp.g2 as i64;
    if m % g2 != 0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let mr = m / g2;
    let gs = sp.g_star as i64;
    let chi_g0 = f64::from(jacobi(sp.g0 as i64, gs)?);
    let gauss = f64::from(jacobi(mr, gs)?) * (gs as f64).sqrt();
    let gauss = if gcd(mr, gs) == 1 || gs == 1 { gauss } else { 0.0 };
    let ram = ramanujan_sum(sp.g0 as i64, mr) as f64;
    Ok(eps(gs)?.to_complex() * (g2 as f64 * chi_g0 * gauss * ram))
}

/// Character sum with the direct route as reference where affordable.
pub fn char_sum(m: i64, g: i64) -> Result<Complex64, ArithmeticError> {
    if g > 0 && g as u64 <= DIRECT_SUM_CAP {
        char_sum_direct(m, g)
    } else {
        char_sum_factored(m, g)
    }
}

/// Ramanujan sum `c_{g0}(m) = sum_{l | (m, g0)} l mu(g0/l)`.
pub fn ramanujan_sum(g0: i64, m: i64) -> i64 {
    let g = gcd(m, g0);
    divisors(g as u64)
        .into_iter()
        .map(|l| l as i64 * mobius(g0 as u64 / l))
        .sum()
}

/// `sum_{r mod g0, (r,g0)=1} e(mr/g0)` by direct summation.
pub fn ramanujan_sum_direct(g0: i64, m: i64) -> Complex64 {
    (0..g0).filter(|&r| gcd(r, g0) == 1).map(|r| e_frac(m * r, g0)).sum()
}

/// Divisor-sum function `sigma_k(n)`.
pub fn sigma(n: u64, k: u32) -> u64 {
    divisors(n).into_iter().map(|d| d.pow(k)).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn trial_division(mut n: u64) -> Vec<(u64, u32)> {
        let mut out = Vec::new();
        for p in 2..=n {
            if n == 1 {
                break;
            }
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            if e > 0 {
                out.push((p, e));
            }
        }
        out
    }

    #[test]
    fn factorize_examples() {
        assert!(factorize(1).unwrap().factors().is_empty());
        assert_eq!(factorize(9).unwrap().factors(), &[(3, 2)]);
        assert_eq!(factorize(720).unwrap().factors(), trial_division(720).as_slice());
        assert_eq!(factorize(720).unwrap().factors(), &[(2, 4), (3, 2), (5, 1)]);
        assert!(factorize(0).is_err());
        assert!(factorize(-5).is_err());
    }

    #[test]
    fn jacobi_examples() {
        assert_eq!(jacobi(0, 5).unwrap(), 1);
        assert_eq!(jacobi(2, 3).unwrap(), -1);
        assert_eq!(jacobi(-2, -3).unwrap(), -1);
        assert!(jacobi(1, 4).is_err());
    }

    #[test]
    fn jacobi_matches_euler_criterion_for_primes() {
        for p in [3i64, 5, 7, 11, 13, 97] {
            for c in -50i64..50 {
                let expected = match pow_mod(c.rem_euclid(p) as u64, ((p - 1) / 2) as u64, p as u64) {
                    0 => 0,
                    1 => 1,
                    _ => -1,
                };
                let expected = match c {
                    0 => 1,
                    _ if c.rem_euclid(p) == 0 => 0,
                    _ => expected,
                };
                assert_eq!(jacobi(c, p).unwrap(), expected, "c={c} p={p}");
            }
        }
    }

    #[test]
    fn jacobi_multiplicative_in_top() {
        for d in (1..=99).step_by(2) {
            for a in -99..=99i64 {
                for b in [-7i64, -3, 2, 5, 11] {
                    let lhs = jacobi(a * b, d).unwrap();
                    let rhs = jacobi(a, d).unwrap() * jacobi(b, d).unwrap();
                    if a != 0 && b != 0 {
                        assert_eq!(lhs, rhs, "a={a} b={b} d={d}");
                    }
                }
            }
        }
    }

    #[test]
    fn eps_examples() {
        assert_eq!(eps(1).unwrap(), FourthRoot::ONE);
        assert_eq!(eps(3).unwrap(), FourthRoot::I);
        assert_eq!(eps(9).unwrap(), FourthRoot::ONE);
        assert_eq!(eps(-1).unwrap(), FourthRoot::I);
        assert!(eps(2).is_err());
    }

    #[test]
    fn square_parts_examples() {
        let s = square_parts(1).unwrap();
        assert_eq!((s.g_star, s.g_prime, s.rad, s.g0, s.g2), (1, 1, 1, 1, 1));
        let s = square_parts(12).unwrap();
        assert_eq!((s.g_star, s.g_prime, s.rad, s.g0, s.g2), (3, 2, 6, 2, 2));
        let s = square_parts(27).unwrap();
        assert_eq!((s.g_star, s.g_prime, s.rad, s.g0, s.g2), (3, 3, 3, 1, 9));
    }

    #[test]
    fn char_sum_examples() {
        let c = char_sum(17, 1).unwrap();
        assert!((c - Complex64::new(1.0, 0.0)).norm() < 1e-12);
        let c = char_sum(1, 3).unwrap();
        assert!((c - Complex64::new(0.0, 3f64.sqrt())).norm() < 1e-12);
        let direct = e_frac(1, 3) - e_frac(2, 3);
        assert!((c - direct).norm() < 1e-12);
        let c9 = char_sum_direct(3, 9).unwrap();
        assert!((c9 - char_sum_factored(3, 9).unwrap()).norm() < 1e-10);
        assert!(char_sum_direct(1, 9).unwrap().norm() < 1e-10);
    }

    #[test]
    fn char_sum_factorization_matches_direct() {
        for g in (1..=225).step_by(2) {
            for m in -225..=225 {
                let d = char_sum_direct(m, g).unwrap();
                let f = char_sum_factored(m, g).unwrap();
                assert!((d - f).norm() < 1e-10, "g={g} m={m} direct={d} factored={f}");
            }
        }
    }

    #[test]
    fn char_sum_vanishes_off_g2() {
        for g in (1..=225).step_by(2) {
            let g2 = square_parts(g).unwrap().g2 as i64;
            for m in -225..=225 {
                if m % g2 != 0 {
                    assert!(char_sum_direct(m, g).unwrap().norm() < 1e-10);
                }
            }
        }
    }

    #[test]
    fn gauss_sum_of_squarefree_modulus() {
        for g in (1..=225i64).step_by(2) {
            let sp = square_parts(g).unwrap();
            if sp.g_star != sp.g {
                continue;
            }
            for m in -40..40 {
                let expect = eps(g).unwrap().to_complex() * (f64::from(jacobi(m, g).unwrap()) * (g as f64).sqrt());
                let expect = if gcd(m, g) == 1 || g == 1 { expect } else { Complex64::new(0.0, 0.0) };
                assert!((char_sum_direct(m, g).unwrap() - expect).norm() < 1e-10, "g={g} m={m}");
            }
        }
    }

    #[test]
    fn ramanujan_examples() {
        assert_eq!(ramanujan_sum(1, 5), 1);
        assert_eq!(ramanujan_sum(3, 3), 2);
        assert_eq!(ramanujan_sum(3, 1), -1);
        for g0 in 1..60 {
            for m in -60..60 {
                let d = ramanujan_sum_direct(g0, m);
                assert!((d - Complex64::new(ramanujan_sum(g0, m) as f64, 0.0)).norm() < 1e-10);
            }
        }
    }

    #[test]
    fn primality_small_range() {
        let sieve: Vec<bool> = (0..2000u64).map(|n| n >= 2 && (2..n).all(|k| n % k != 0)).collect();
        for n in 0..2000u64 {
            assert_eq!(is_prime(n), sieve[n as usize], "n={n}");
        }
        assert!(is_prime(1_000_000_007));
        assert!(!is_prime(1_000_000_007 * 3));
    }

    proptest! {
        #[test]
        fn factorization_reconstructs(n in 1i64..2_000_000) {
            let f = factorize(n).unwrap();
            prop_assert_eq!(f.value(), n as u64);
            prop_assert!(f.factors().windows(2).all(|w| w[0].0 < w[1].0));
            prop_assert!(f.primes().all(is_prime));
        }

        #[test]
        fn square_parts_invariants(g in 1i64..200_000) {
            let s = square_parts(g).unwrap();
            prop_assert_eq!(s.g_star * s.g_prime * s.g_prime, g as u64);
            prop_assert_eq!(mobius(s.g_star) != 0, true);
            prop_assert_eq!(s.g0 * s.g_star, s.rad);
            prop_assert_eq!(s.g2 * s.rad, g as u64);
            prop_assert_eq!(g as u64 % s.g0, 0);
        }

        #[test]
        fn ext_gcd_bezout(a in -10_000i64..10_000, b in -10_000i64..10_000) {
            let (g, x, y) = ext_gcd(a, b);
            prop_assert_eq!(a * x + b * y, g);
            prop_assert_eq!(g, gcd(a, b));
        }
    }
}
