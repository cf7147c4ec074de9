//! Central values and shifted L-values of the basis, by the split Mellin integral and by
//! direct quadrature along the whole axis.

use halfint_rtf::params::Weight;
use halfint_rtf::spectral::basis::basis_cuspforms;
use halfint_rtf::spectral::lvalue::{basis_l_values, l_direct};
use num_complex::Complex64;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for w in [9u32, 13, 17] {
        let basis = basis_cuspforms(Weight::new(w)?, 1200)?;
        for s in [Complex64::new(0.0, 0.0), Complex64::new(0.25, 1.0)] {
            let split = basis_l_values(&basis, s)?;
            let direct = l_direct(&basis, s, 0.02)?;
            for (i, (a, b)) in split.iter().zip(&direct).enumerate() {
                println!("kappa={w}/2 s={s} E_{i}: {a:.12e} (direct {b:.12e})");
            }
        }
    }
    Ok(())
}
