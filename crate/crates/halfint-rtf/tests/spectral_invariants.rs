//! Invariants of the spectral side under basis changes, kernel symmetry and truncation.

use std::sync::OnceLock;

use halfint_rtf::geometric::SpectralPoint;
use halfint_rtf::params::{OddSquare, Weight};
use halfint_rtf::spectral::basis::{basis_cuspforms, BasisEvaluator};
use halfint_rtf::spectral::moment::{SpectralConfig, SpectralData};
use halfint_rtf::spectral::qexp::{evaluate_form, QExpansion};
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use proptest::prelude::*;

fn data() -> &'static SpectralData {
    static DATA: OnceLock<SpectralData> = OnceLock::new();
    DATA.get_or_init(|| {
        let mut d = SpectralData::build(SpectralConfig::new(Weight::new(17).unwrap(), OddSquare::new(9).unwrap())).unwrap();
        d.hecke(OddSquare::new(9).unwrap()).unwrap();
        d
    })
}

/// The bilinear form changes covariantly when the basis is changed by `R`.
fn transformed(d: &SpectralData, r: &DMatrix<f64>) -> SpectralData {
    let mut out = d.clone();
    out.gram.matrix = r.transpose() * &d.gram.matrix * r;
    out.central_values = (r.transpose() * DVector::from_vec(d.central_values.clone())).iter().copied().collect();
    let rinv = r.clone().try_inverse().unwrap();
    out.hecke = d.hecke.iter().map(|(n, t)| (*n, &rinv * t * r)).collect();
    out
}

fn spectral_kernel(d: &SpectralData, z: Complex64, zp: Complex64) -> Complex64 {
    let ev = BasisEvaluator::new(&d.basis);
    let v = DVector::from_vec(ev.values(z).unwrap());
    let vp = DVector::from_vec(ev.values(zp).unwrap().into_iter().map(|x| x.conj()).collect());
    let ginv = d.gram.matrix.clone().try_inverse().unwrap().map(|x| Complex64::new(x, 0.0));
    (v.transpose() * ginv * vp)[(0, 0)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn eigen_moment_is_basis_independent(entries in proptest::collection::vec(-2.0f64..2.0, 9)) {
        let d = data();
        let r = DMatrix::from_row_slice(3, 3, &entries) + DMatrix::identity(3, 3) * 5.0;
        prop_assume!(r.determinant().abs() > 1.0);
        let n = OddSquare::new(9).unwrap();
        let a = d.clone().moment_eigen(n).unwrap();
        let b = transformed(d, &r).moment_eigen(n).unwrap();
        prop_assert!((a - b).abs() <= 1e-8 * a.abs(), "{} vs {}", a, b);
    }

    #[test]
    fn moment_is_symmetric_in_real_s(s1 in -0.4f64..0.4, s2 in -0.4f64..0.4) {
        let mut d = data().clone();
        let n = OddSquare::new(9).unwrap();
        let a = d.moment_basis_free(SpectralPoint::real(s1, s2), n).unwrap();
        let b = d.moment_basis_free(SpectralPoint::real(s2, s1), n).unwrap();
        prop_assert!((a - b).norm() <= 1e-9 * a.norm(), "{} vs {}", a, b);
    }

    #[test]
    fn kernel_is_hermitian(x1 in -0.5f64..0.5, y1 in 0.6f64..2.0, x2 in -0.5f64..0.5, y2 in 0.6f64..2.0) {
        let d = data();
        let (z, zp) = (Complex64::new(x1, y1), Complex64::new(x2, y2));
        let k = spectral_kernel(d, z, zp);
        let kt = spectral_kernel(d, zp, z).conj();
        prop_assert!((k - kt).norm() <= 1e-10 * k.norm().max(1e-300));
    }

    #[test]
    fn gram_is_positive(x in proptest::collection::vec(-1.0f64..1.0, 3)) {
        prop_assume!(x.iter().any(|v| v.abs() > 1e-3));
        let g = &data().gram.matrix;
        let v = DVector::from_vec(x);
        prop_assert!((v.transpose() * g * &v)[(0, 0)] > 0.0);
    }
}

#[test]
fn doubling_the_truncation_changes_nothing_at_low_height() {
    let w = Weight::new(13).unwrap();
    let short = basis_cuspforms(w, 1200).unwrap();
    let long = basis_cuspforms(w, 2400).unwrap();
    for (a, b) in short.members.iter().zip(&long.members) {
        for x in [0.0, 0.13, -0.4] {
            let z = Complex64::new(x, 0.02);
            let (va, vb) = (evaluate_form(a, z).unwrap(), evaluate_form(b, z).unwrap());
            assert!((va - vb).norm() <= 1e-10 * vb.norm().max(1.0), "z={z}: {va} vs {vb}");
        }
    }
    let tiny = QExpansion { twice_weight: 13, coeffs: short.members[0].coeffs[..60].to_vec() };
    assert!(evaluate_form(&tiny, Complex64::new(0.0, 0.02)).is_err());
}
