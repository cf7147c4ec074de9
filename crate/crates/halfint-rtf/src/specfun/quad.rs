//! Quadrature rules: tanh-sinh on intervals, Gauss-Legendre nodes, trapezoid sums
//! on lines and periodic trapezoid rules on circles.

use num_complex::Complex64;
use rayon::prelude::*;
use std::f64::consts::{FRAC_PI_2, PI};

use super::{CompensatedSum, PrecisionPolicy, SpecfunError};

const TANH_SINH_LEVELS: usize = 12;
const TANH_SINH_TMAX: f64 = 4.0;

/// Double-exponential quadrature of `f` over `[a, b]` to relative tolerance `tol`.
///
/// Endpoint singularities of algebraic type are tolerated since the rule never samples
/// the endpoints themselves.
pub fn tanh_sinh<F>(f: F, a: f64, b: f64, tol: f64) -> Result<Complex64, SpecfunError>
where
    F: Fn(f64) -> Complex64,
{
    if !(a < b) || !a.is_finite() || !b.is_finite() {
        return Err(SpecfunError::Domain(format!("tanh-sinh needs a finite interval a<b, got [{a}, {b}]")));
    }
    let half = 0.5 * (b - a);
    let sample = |t: f64| -> (Complex64, f64) {
        let u = FRAC_PI_2 * t.sinh();
        let w = FRAC_PI_2 * t.cosh() / u.cosh().powi(2);
        let gap = half * 2.0 / ((2.0 * u.abs()).exp() + 1.0);
        let x = if t >= 0.0 { b - gap } else { a + gap };
        if gap <= 0.0 || x <= a || x >= b || w == 0.0 {
            return (Complex64::new(0.0, 0.0), 0.0);
        }
        let v = f(x) * (w * half);
        (v, v.norm())
    };

    let mut h = 0.5;
    let (first, mut abs_total) = sample(0.0);
    let mut acc = CompensatedSum::new();
    acc.add(first);
    let mut k = 1;
    while k as f64 * h <= TANH_SINH_TMAX {
        for t in [k as f64 * h, -(k as f64) * h] {
            let (v, n) = sample(t);
            acc.add(v);
            abs_total += n;
        }
        k += 1;
    }
    let mut estimate = acc.value() * h;
    for _ in 1..TANH_SINH_LEVELS {
        h *= 0.5;
        let mut k = 1;
        while k as f64 * h <= TANH_SINH_TMAX {
            for t in [k as f64 * h, -(k as f64) * h] {
                let (v, n) = sample(t);
                acc.add(v);
                abs_total += n;
            }
            k += 2;
        }
        let next = acc.value() * h;
        let diff = (next - estimate).norm();
        estimate = next;
        if diff <= tol * estimate.norm() + 1e-15 * abs_total * h {
            return Ok(estimate);
        }
    }
    Err(SpecfunError::NoConvergence {
        what: "tanh-sinh",
        detail: format!("estimate {estimate} on [{a}, {b}]"),
    })
}

/// Gauss-Legendre nodes and weights on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            let p = if n == 0 { 1.0 } else if n == 1 { x } else { p1 };
            let pm = if n == 1 { 1.0 } else { p0 };
            dp = n as f64 * (x * p - pm) / (x * x - 1.0);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        out.push((x, 2.0 / ((1.0 - x * x) * dp * dp)));
    }
    out
}

/// `h * sum_{k} f(t_min + k h)` over the grid covering `[t_min, t_max]`.
pub fn trapezoid_line<F>(f: F, t_min: f64, t_max: f64, h: f64) -> Complex64
where
    F: Fn(f64) -> Complex64 + Sync,
{
    let steps = ((t_max - t_min) / h).ceil() as usize;
    let parts: Vec<Complex64> = (0..=steps).into_par_iter().map(|k| f(t_min + k as f64 * h)).collect();
    parts.into_iter().collect::<CompensatedSum>().value() * h
}

fn circle_sum<F>(f: &F, radius: f64, nodes: usize) -> Result<Complex64, SpecfunError>
where
    F: Fn(Complex64) -> Result<Complex64, SpecfunError> + Sync,
{
    let step = 2.0 * PI / nodes as f64;
    let parts: Result<Vec<Complex64>, SpecfunError> = (0..nodes)
        .into_par_iter()
        .map(|k| {
            let z = Complex64::from_polar(radius, k as f64 * step);
            Ok(f(z)? * z * Complex64::i())
        })
        .collect();
    Ok(parts?.into_iter().collect::<CompensatedSum>().value() * step)
}

/// `oint_{|z| = radius} f(z) dz` by the periodic trapezoid rule, doubling the node count
/// from `policy.nodes` until successive values differ by less than `1e-10 max(1, |I|)`.
pub fn contour_circle<F>(f: F, radius: f64, policy: &PrecisionPolicy) -> Result<Complex64, SpecfunError>
where
    F: Fn(Complex64) -> Result<Complex64, SpecfunError> + Sync,
{
    let mut nodes = policy.nodes.max(4);
    let mut prev = circle_sum(&f, radius, nodes)?;
    while nodes < MAX_CONTOUR_NODES {
        nodes *= 2;
        let next = circle_sum(&f, radius, nodes)?;
        if (next - prev).norm() < CONTOUR_TOL * next.norm().max(1.0) {
            return Ok(next);
        }
        prev = next;
    }
    Err(SpecfunError::NoConvergence { what: "circle contour", detail: format!("last value {prev} at {nodes} nodes") })
}

pub const MAX_CONTOUR_NODES: usize = 1 << 14;
pub const CONTOUR_TOL: f64 = 1e-10;

fn torus_sum<F>(f: &F, r1: f64, r2: f64, nodes: usize) -> Result<Complex64, SpecfunError>
where
    F: Fn(Complex64, Complex64) -> Result<Complex64, SpecfunError> + Sync,
{
    let step = 2.0 * PI / nodes as f64;
    let rows: Result<Vec<Complex64>, SpecfunError> = (0..nodes)
        .into_par_iter()
        .map(|j| {
            let z1 = Complex64::from_polar(r1, j as f64 * step);
            let mut row = CompensatedSum::new();
            for k in 0..nodes {
                let z2 = Complex64::from_polar(r2, (k as f64 + 0.5) * step);
                row.add(f(z1, z2)? * z1 * z2 * -1.0);
            }
            Ok(row.value())
        })
        .collect();
    Ok(rows?.into_iter().collect::<CompensatedSum>().value() * (step * step))
}

/// `oint_{|z1| = r1} oint_{|z2| = r2} f dz2 dz1` on a product trapezoid grid.
///
/// The second circle is sampled on a half-step offset grid so integrands with a
/// removable singularity on `z1 + z2 = 0` are never evaluated there.
pub fn contour_circle_2d<F>(f: F, r1: f64, r2: f64, policy: &PrecisionPolicy) -> Result<Complex64, SpecfunError>
where
    F: Fn(Complex64, Complex64) -> Result<Complex64, SpecfunError> + Sync,
{
    let mut nodes = policy.nodes.max(4);
    let mut prev = torus_sum(&f, r1, r2, nodes)?;
    while nodes < MAX_TORUS_NODES {
        nodes *= 2;
        let next = torus_sum(&f, r1, r2, nodes)?;
        if (next - prev).norm() < CONTOUR_TOL * next.norm().max(1.0) {
            return Ok(next);
        }
        prev = next;
    }
    Err(SpecfunError::NoConvergence { what: "torus contour", detail: format!("last value {prev} at {nodes}^2 nodes") })
}

pub const MAX_TORUS_NODES: usize = 1 << 10;
