//! One-dimensional lattice sums, the Lipschitz summation check and the dual-cell
//! kernel integrals.

use num_complex::Complex64;
use std::f64::consts::PI;

use super::{cpowf, gamma_c, i_pow, tanh_sinh, trapezoid_line, CompensatedSum, SpecfunError, BERNOULLI_EVEN};

const EM_TERMS: usize = 8;

fn falling(p: f64, m: usize) -> f64 {
    (0..m).map(|i| -p - i as f64).product()
}

fn one_sided_tail(a: f64, b: Complex64, p: f64, k0: f64) -> Complex64 {
    let base = b + a * k0;
    let mut tail = cpowf(base, 1.0 - p) / (a * (p - 1.0)) - cpowf(base, -p) * 0.5;
    let mut fact = 1.0;
    for j in 1..=EM_TERMS {
        let m = 2 * j - 1;
        fact *= (2 * j - 1) as f64 * (2 * j) as f64;
        let deriv = cpowf(base, -p - m as f64) * (falling(p, m) * a.powi(m as i32));
        tail -= deriv * (BERNOULLI_EVEN[j - 1] / fact);
    }
    tail
}

/// Beyond this ratio `|Im B| / |A|` the Fourier side of the Lipschitz formula is used.
pub const FOURIER_SWITCH: f64 = 0.5;

/// `d^order/dB^order sum_{k in Z} (A k + B)^{-kappa}` with principal powers.
///
/// `B` must lie off the real axis so every term shares one continuous branch.
pub fn lattice_sum(a: f64, b: Complex64, kappa: f64, order: usize) -> Result<Complex64, SpecfunError> {
    if a == 0.0 || b.im == 0.0 {
        return Err(SpecfunError::Domain(format!("lattice sum needs A != 0 and Im B != 0, got A={a}, B={b}")));
    }
    if kappa + order as f64 <= 1.0 {
        return Err(SpecfunError::Domain(format!("lattice sum diverges for exponent {kappa}")));
    }
    if b.im.abs() >= FOURIER_SWITCH * a.abs() {
        lattice_fourier(a.abs(), b, kappa, order)
    } else {
        Ok(lattice_direct(a, b, kappa, order))
    }
}

/// Direct summation with Euler-Maclaurin tails in both directions.
pub fn lattice_direct(a: f64, b: Complex64, kappa: f64, order: usize) -> Complex64 {
    let p = kappa + order as f64;
    let cutoff = ((32.0 + b.norm()) / a.abs()).ceil().min(1e7);
    let kmax = cutoff as i64;
    let mut acc = CompensatedSum::new();
    for k in -kmax..=kmax {
        acc.add(cpowf(b + a * k as f64, -p));
    }
    acc.add(one_sided_tail(a, b, p, cutoff));
    acc.add(one_sided_tail(-a, b, p, cutoff));
    acc.value() * falling(kappa, order)
}

fn lattice_fourier(a: f64, b: Complex64, kappa: f64, order: usize) -> Result<Complex64, SpecfunError> {
    if b.im < 0.0 {
        return Ok(lattice_fourier(a, b.conj(), kappa, order)?.conj());
    }
    let tau = b / a;
    let q = (Complex64::new(0.0, 2.0 * PI) * tau).exp();
    let mut acc = CompensatedSum::new();
    let mut qj = Complex64::new(1.0, 0.0);
    let mut j = 1u64;
    loop {
        qj *= q;
        let jf = j as f64;
        let term = qj * jf.powf(kappa - 1.0) * (2.0 * PI * jf / a).powi(order as i32);
        acc.add(term);
        if j > 4 && term.norm() <= 1e-18 * acc.value().norm() {
            break;
        }
        if j > 1_000_000 {
            return Err(SpecfunError::NoConvergence { what: "Fourier lattice sum", detail: format!("A={a}, B={b}") });
        }
        j += 1;
    }
    let spin = Complex64::i().powu(order as u32);
    let pref = cpowf(Complex64::new(0.0, -2.0 * PI), kappa) / (gamma_c(Complex64::new(kappa, 0.0))? * a.powf(kappa));
    Ok(acc.value() * pref * spin)
}

/// Both sides of the Lipschitz formula for the progression `m = r mod s`:
/// `sum (z + m)^{-kappa}` and `(-2 pi i)^kappa / (Gamma(kappa) s^kappa) sum_{m >= 1} m^{kappa-1} e(rm/s) e(mz/s)`.
pub fn lipschitz_sides(z: Complex64, kappa: f64, r: i64, s: i64) -> Result<(Complex64, Complex64), SpecfunError> {
    if z.im <= 0.0 || kappa <= 1.0 || s <= 0 {
        return Err(SpecfunError::Domain(format!("Lipschitz sides need Im z > 0, kappa > 1, s > 0 (z={z}, kappa={kappa}, s={s})")));
    }
    let lhs = lattice_direct(s as f64, z + r as f64, kappa, 0);
    let q = (Complex64::new(0.0, 2.0 * PI) * z / s as f64).exp();
    let mut acc = CompensatedSum::new();
    let mut qm = Complex64::new(1.0, 0.0);
    let mut m = 1u64;
    loop {
        qm *= q;
        let term = qm * (m as f64).powf(kappa - 1.0);
        let twist = Complex64::from_polar(1.0, 2.0 * PI * ((r * m as i64).rem_euclid(s)) as f64 / s as f64);
        acc.add(term * twist);
        if m > 10 && term.norm() < 1e-18 * acc.value().norm().max(1e-300) {
            break;
        }
        if m > 10_000_000 {
            return Err(SpecfunError::NoConvergence { what: "Lipschitz series", detail: format!("z={z}") });
        }
        m += 1;
    }
    let pref = cpowf(Complex64::new(0.0, -2.0 * PI), kappa) / (gamma_c(Complex64::new(kappa, 0.0))? * (s as f64).powf(kappa));
    Ok((lhs, acc.value() * pref))
}

/// Closed forms of the two dual-cell kernel integrals
/// `int int y1^{kappa/2 - s1} y2^{kappa/2 - s2} (+-1 + i y1 + i y2)^{-kappa} dy1/y1 dy2/y2`.
pub fn j1j2_closed(s1: Complex64, s2: Complex64, kappa: f64) -> Result<(Complex64, Complex64), SpecfunError> {
    let h = kappa / 2.0;
    if !(s1.re < h && s2.re < h && (s1 + s2).re > 0.0) {
        return Err(SpecfunError::Domain(format!("kernel integrals need Re s_i < kappa/2 and Re(s1+s2) > 0, got ({s1}, {s2})")));
    }
    let sum = s1 + s2;
    let core = gamma_c(-s1 + h)? * gamma_c(-s2 + h)? * gamma_c(sum)? / (gamma_c(Complex64::new(kappa, 0.0))? * i_pow(Complex64::new(kappa, 0.0)));
    let phase = (Complex64::new(0.0, PI / 2.0) * sum).exp();
    Ok((core * phase, core / phase))
}

/// The same two integrals by direct quadrature in radial coordinates
/// `y1 = rho v`, `y2 = rho (1 - v)`, with a log-trapezoid rule in `rho`
/// and tanh-sinh in `v`.
pub fn j1j2_quadrature(s1: Complex64, s2: Complex64, kappa: f64) -> Result<(Complex64, Complex64), SpecfunError> {
    let h = kappa / 2.0;
    if !(s1.re > 1.0 - h && s1.re < h && s2.re < h && (s1 + s2).re > 0.0) {
        return Err(SpecfunError::Domain(format!("kernel quadrature outside its convergence region: ({s1}, {s2})")));
    }
    let (e1, e2) = (-s1 + h, -s2 + h);
    let inner = |rho: f64, sign: f64| -> Result<Complex64, SpecfunError> {
        let den = cpowf(Complex64::new(sign, rho), -kappa);
        let ang = tanh_sinh(
            |v| {
                let y1 = Complex64::new(rho * v, 0.0);
                let y2 = Complex64::new(rho * (1.0 - v), 0.0);
                ((e1 - 1.0) * y1.ln() + (e2 - 1.0) * y2.ln()).exp()
            },
            0.0,
            1.0,
            1e-13,
        )?;
        Ok(ang * den * rho * rho)
    };
    let mut out = [Complex64::new(0.0, 0.0); 2];
    for (slot, sign) in out.iter_mut().zip([1.0, -1.0]) {
        let errs = std::sync::Mutex::new(None);
        let v = trapezoid_line(
            |u| match inner(u.exp(), sign) {
                Ok(x) => x,
                Err(e) => {
                    *errs.lock().unwrap() = Some(e);
                    Complex64::new(0.0, 0.0)
                }
            },
            -12.0,
            70.0,
            0.2,
        );
        if let Some(e) = errs.into_inner().unwrap() {
            return Err(e);
        }
        *slot = v;
    }
    Ok((out[0], out[1]))
}

#[cfg(test)]
mod tests {
    use super::super::{c, rel_err};
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn lattice_sum_matches_classical_values() {
        let z = c(0.0, 1.0);
        let direct: Complex64 = (-200_000i64..=200_000).map(|k| cpowf(z + k as f64, -4.0)).sum();
        assert!(rel_err(lattice_sum(1.0, z, 4.0, 0).unwrap(), direct) < 1e-12);
        let sum2 = c(-(PI * PI) / (PI).sinh().powi(2), 0.0);
        assert!(rel_err(lattice_sum(1.0, z, 2.0, 0).unwrap(), sum2) < 1e-12);
        let d = lattice_sum(1.0, z, 2.0, 1).unwrap();
        let h = 1e-5;
        let fd = (lattice_sum(1.0, z + h, 2.0, 0).unwrap() - lattice_sum(1.0, z - h, 2.0, 0).unwrap()) / (2.0 * h);
        assert!(rel_err(d, fd) < 1e-8);
        assert!(lattice_sum(0.0, z, 4.0, 0).is_err());
        assert!(lattice_sum(1.0, c(0.5, 0.0), 4.0, 0).is_err());
    }

    #[test]
    fn fourier_and_direct_branches_agree() {
        for (a, b, kappa, order) in [(1.0, c(0.2, 0.6), 4.5, 0), (3.0, c(-1.1, 1.4), 6.5, 0), (9.0, c(4.0, -5.0), 8.5, 0), (1.0, c(0.3, 0.8), 4.5, 1), (5.0, c(2.0, 3.0), 6.5, 2)] {
            let fourier = lattice_sum(a, b, kappa, order).unwrap();
            let direct = lattice_direct(a, b, kappa, order);
            assert!(rel_err(fourier, direct) < 1e-11, "A={a} B={b}: {fourier} vs {direct}");
        }
    }

    #[test]
    fn lattice_sum_signed_step() {
        let b = c(0.3, 0.7);
        let plus = lattice_sum(3.0, b, 6.5, 0).unwrap();
        let minus = lattice_sum(-3.0, b, 6.5, 0).unwrap();
        assert!(rel_err(plus, minus) < 1e-13);
    }

    #[test]
    fn lipschitz_examples() {
        for (z, kappa, r, s) in [(c(0.0, 2.0), 4.5, 1, 1), (c(0.0, 1.0), 6.5, 2, 3), (c(0.2, 0.5), 9.5, 0, 1), (c(-0.4, 0.3), 5.5, 3, 4)] {
            let (lhs, rhs) = lipschitz_sides(z, kappa, r, s).unwrap();
            assert!((lhs - rhs).norm() < 1e-9 * lhs.norm().max(1.0), "z={z} k={kappa}: {lhs} vs {rhs}");
        }
    }

    #[test]
    fn kernel_integrals_match_quadrature() {
        let (s1, s2) = (c(0.3, 0.0), c(0.4, 0.0));
        let (j1, j2) = j1j2_closed(s1, s2, 6.5).unwrap();
        let (q1, q2) = j1j2_quadrature(s1, s2, 6.5).unwrap();
        assert!(rel_err(j1, q1) < 1e-8, "{j1} vs {q1}");
        assert!(rel_err(j2, q2) < 1e-8, "{j2} vs {q2}");
        let (k1, _) = j1j2_closed(s2, s1, 6.5).unwrap();
        assert!(rel_err(j1, k1) < 1e-15);
        let ratio = (Complex64::new(0.0, -PI) * (s1 + s2)).exp();
        assert!(rel_err(j2, j1 * ratio) < 1e-14);
        assert!(j1j2_closed(c(-0.5, 0.0), c(0.2, 0.0), 6.5).is_err());
    }

    proptest! {
        #[test]
        fn lipschitz_random(x in -1.0f64..1.0, y in 0.3f64..2.0, w in 5u32..12, r in 0i64..6, s in 1i64..6) {
            let kappa = (2 * w + 1) as f64 / 2.0;
            let (lhs, rhs) = lipschitz_sides(c(x, y), kappa, r, s).unwrap();
            prop_assert!((lhs - rhs).norm() < 1e-9 * lhs.norm().max(1.0));
        }
    }
}
