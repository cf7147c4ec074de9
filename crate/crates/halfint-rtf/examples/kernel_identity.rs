//! Reproducing kernel: basis-free spectral sum against the truncated matrix sum.

use halfint_rtf::params::{OddSquare, Weight};
use halfint_rtf::spectral::kernel::kernel_check;
use halfint_rtf::spectral::moment::{SpectralConfig, SpectralData};
use num_complex::Complex64;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let i = Complex64::new(0.0, 1.0);
    for (w, n, z, zp) in [(9u32, 1i64, i, i), (13, 1, Complex64::new(0.25, 0.7), i), (13, 9, i, Complex64::new(-0.1, 1.2))] {
        let w = Weight::new(w)?;
        let n = OddSquare::new(n)?;
        let data = SpectralData::build(SpectralConfig::new(w, n))?;
        for radius in [100.0, 200.0] {
            let c = kernel_check(&data, z, zp, n, radius)?;
            println!(
                "kappa={w} n={n} z={z} z'={zp} R={radius}: lhs={:.10e} rhs={:.10e} rel={:.2e} (R/2 rel {:.2e})",
                c.lhs,
                c.rhs,
                c.rel_err,
                (c.lhs - c.rhs_half_radius).norm() / c.lhs.norm()
            );
        }
    }
    Ok(())
}
