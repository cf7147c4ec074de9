//! Petersson inner products over `Gamma0(4) \ H`, integrated over the six translates
//! `alpha F` of the standard fundamental domain of `SL2(Z)`.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::basis::{BasisEvaluator, BasisSet};
use super::SpectralError;
use crate::multiplier::Mat2;
use crate::specfun::gauss_legendre;

/// Right coset representatives of `Gamma0(4)` in `SL2(Z)`: `I`, `S`, `ST^k` (`k = 1, 2, 3`)
/// and `(1, 0; 2, 1)`.
pub const GAMMA0_4_COSETS: [Mat2; 6] = [
    Mat2::new(1, 0, 0, 1),
    Mat2::new(0, -1, 1, 0),
    Mat2::new(0, -1, 1, 1),
    Mat2::new(0, -1, 1, 2),
    Mat2::new(0, -1, 1, 3),
    Mat2::new(1, 0, 2, 1),
];

/// Tensor Gauss-Legendre grid on `|x| <= 1/2`, `sqrt(1 - x^2) <= y <= y_max`, with the
/// `y` range cut into unit panels.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureGrid {
    pub x_nodes: usize,
    pub y_nodes: usize,
    pub y_max: f64,
}

impl Default for QuadratureGrid {
    fn default() -> Self {
        QuadratureGrid { x_nodes: 24, y_nodes: 16, y_max: 16.0 }
    }
}

impl QuadratureGrid {
    /// A grid with about two thirds of the nodes, for error estimates.
    pub fn coarse(&self) -> Self {
        QuadratureGrid { x_nodes: self.x_nodes * 2 / 3, y_nodes: self.y_nodes * 3 / 4, y_max: self.y_max }
    }

    /// Nodes `z` in the fundamental domain with weights for `dx dy / y^2`.
    pub fn nodes(&self) -> Vec<(Complex64, f64)> {
        let gx = gauss_legendre(self.x_nodes);
        let gy = gauss_legendre(self.y_nodes);
        let mut out = Vec::new();
        for &(tx, wx) in &gx {
            let x = 0.5 * tx;
            let bottom = (1.0 - x * x).sqrt();
            let mut edges = vec![bottom];
            let mut next = 1.0f64;
            while next < self.y_max {
                if next > bottom {
                    edges.push(next);
                }
                next += 1.0;
            }
            edges.push(self.y_max);
            for pair in edges.windows(2) {
                let (lo, hi) = (pair[0], pair[1]);
                for &(ty, wy) in &gy {
                    let y = 0.5 * (lo + hi) + 0.5 * (hi - lo) * ty;
                    out.push((Complex64::new(x, y), 0.5 * wx * 0.5 * (hi - lo) * wy / (y * y)));
                }
            }
        }
        out
    }
}

/// `int_{Gamma \ H} h(z) dx dy / y^2` for a vector-valued `Gamma`-invariant `h`, with
/// `Gamma \ H` the union of `alpha F` over the given coset representatives.
pub fn integrate_quotient<H>(reps: &[Mat2], grid: &QuadratureGrid, len: usize, h: H) -> Result<Vec<f64>, SpectralError>
where
    H: Fn(Complex64) -> Result<Vec<f64>, SpectralError> + Sync,
{
    let nodes = grid.nodes();
    let parts: Result<Vec<Vec<f64>>, SpectralError> = nodes
        .par_iter()
        .map(|&(z, wt)| {
            let mut acc = vec![0.0; len];
            for alpha in reps {
                let v = h(alpha.act(z))?;
                for (a, x) in acc.iter_mut().zip(v) {
                    *a += wt * x;
                }
            }
            Ok(acc)
        })
        .collect();
    let mut total = vec![0.0; len];
    for p in parts? {
        for (t, x) in total.iter_mut().zip(p) {
            *t += x;
        }
    }
    Ok(total)
}

/// The Gram matrix `<E_i, E_j> = int f_i conj(f_j) y^kappa d mu` of a basis.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Gram {
    pub matrix: DMatrix<f64>,
    /// Maximal entry difference against a coarser grid, relative to the largest entry.
    pub error_estimate: f64,
    pub grid: QuadratureGrid,
}

fn gram_on(ev: &BasisEvaluator<'_>, grid: &QuadratureGrid) -> Result<(DMatrix<f64>, f64), SpectralError> {
    let d = ev.basis().dim();
    let k = ev.basis().weight.kappa();
    let pairs: Vec<(usize, usize)> = (0..d).flat_map(|i| (i..d).map(move |j| (i, j))).collect();
    let np = pairs.len();
    let flat = integrate_quotient(&GAMMA0_4_COSETS, grid, 2 * np, |w| {
        let v = ev.values(w)?;
        let y = w.im.powf(k);
        let mut out = Vec::with_capacity(2 * np);
        for &(i, j) in &pairs {
            let p = v[i] * v[j].conj() * y;
            out.push(p.re);
        }
        for &(i, j) in &pairs {
            out.push((v[i] * v[j].conj() * y).im);
        }
        Ok(out)
    })?;
    let mut m = DMatrix::zeros(d, d);
    let mut imag: f64 = 0.0;
    for (idx, &(i, j)) in pairs.iter().enumerate() {
        m[(i, j)] = flat[idx];
        m[(j, i)] = flat[idx];
        imag = imag.max(flat[np + idx].abs());
    }
    Ok((m, imag))
}

/// Gram matrix of the basis on the given grid, with a coarse-grid error estimate.
pub fn petersson_gram(basis: &BasisSet, grid: &QuadratureGrid) -> Result<Gram, SpectralError> {
    let ev = BasisEvaluator::new(basis);
    let (m, imag) = gram_on(&ev, grid)?;
    let (coarse, _) = gram_on(&ev, &grid.coarse())?;
    let scale = m.iter().fold(0.0f64, |a, x| a.max(x.abs()));
    if imag > 1e-8 * scale {
        return Err(SpectralError::Numerical { what: "Gram matrix", detail: format!("imaginary part {imag:e} of scale {scale:e}") });
    }
    let error_estimate = (&m - coarse).iter().fold(0.0f64, |a, x| a.max(x.abs())) / scale;
    Ok(Gram { matrix: m, error_estimate, grid: *grid })
}

/// `<f, g>` of two forms given by coordinates.
pub fn inner_product(gram: &Gram, x: &[f64], y: &[f64]) -> f64 {
    let xv = nalgebra::DVector::from_column_slice(x);
    let yv = nalgebra::DVector::from_column_slice(y);
    (xv.transpose() * &gram.matrix * yv)[(0, 0)]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::{OddSquare, Weight};
    use crate::spectral::basis::basis_cuspforms;
    use crate::spectral::hecke::hecke_matrix;
    use std::f64::consts::PI;

    fn w(x: u32) -> Weight {
        Weight::new(x).unwrap()
    }

    #[test]
    fn quotient_volume() {
        let grid = QuadratureGrid { y_max: 40.0, ..Default::default() };
        let v = integrate_quotient(&GAMMA0_4_COSETS, &grid, 1, |_| Ok(vec![1.0])).unwrap();
        let exact = 2.0 * PI - 6.0 / 40.0;
        assert!((v[0] - exact).abs() < 1e-9, "{} vs {exact}", v[0]);
    }

    #[test]
    fn gram_is_positive_and_hecke_self_adjoint() {
        for x in [13u32, 17] {
            let b = basis_cuspforms(w(x), 1200).unwrap();
            let g = petersson_gram(&b, &QuadratureGrid::default()).unwrap();
            assert!(g.error_estimate < 1e-8, "{}", g.error_estimate);
            assert!(g.matrix.clone().cholesky().is_some());
            for n in [9, 25] {
                let t = hecke_matrix(OddSquare::new(n).unwrap(), &b).unwrap();
                let lhs = t.transpose() * &g.matrix;
                let rhs = &g.matrix * &t;
                assert!((&lhs - &rhs).norm() <= 1e-6 * g.matrix.norm() * t.norm(), "w={x} n={n}");
            }
        }
    }

    #[test]
    fn coset_choice_does_not_matter() {
        let b = basis_cuspforms(w(9), 1200).unwrap();
        let ev = BasisEvaluator::new(&b);
        let moved: Vec<Mat2> = GAMMA0_4_COSETS
            .iter()
            .zip([Mat2::new(1, 1, 0, 1), Mat2::new(1, 0, 4, 1), Mat2::new(1, -1, 0, 1), Mat2::IDENTITY, Mat2::new(-1, 0, 4, -1), Mat2::new(1, 2, 0, 1)])
            .map(|(a, g)| g * *a)
            .collect();
        let grid = QuadratureGrid::default();
        let h = |z: Complex64| Ok(vec![ev.values(z)?[0].norm_sqr() * z.im.powf(4.5)]);
        let base = integrate_quotient(&GAMMA0_4_COSETS, &grid, 1, h).unwrap()[0];
        let other = integrate_quotient(&moved, &grid, 1, h).unwrap()[0];
        assert!((base - other).abs() < 1e-8 * base, "{base} vs {other}");
    }
}
