//! Special function identities: hypergeometric/Legendre bridge, Lipschitz summation,
//! dual-cell kernel integrals and character sums.

use halfint_rtf::arithmetic::{char_sum_direct, char_sum_factored};
use halfint_rtf::harness::identities::{bridge_error, specfun_suite};
use halfint_rtf::specfun::{hyp2f1_cut, lipschitz_sides, CutSide};
use num_complex::Complex64;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for kappa in [4.5, 8.5, 14.5] {
        println!("bridge kappa={kappa}: {:.1e}", bridge_error(kappa, 0.3)?);
    }
    let (lhs, rhs) = lipschitz_sides(Complex64::new(0.1, 0.9), 6.5, 2, 9)?;
    println!("Lipschitz: {lhs:.14e} vs {rhs:.14e}");
    let h = Complex64::new(3.25, 0.0);
    for x in [1.2, 1.8, 4.0] {
        let (a, b) = (hyp2f1_cut(h, h, x, CutSide::Above)?, hyp2f1_cut(h, h, x, CutSide::Below)?);
        println!("F(13/4, 13/4; 13/2; {x} +- i0) = {a:.12e} / {b:.12e}");
    }
    for (m, g) in [(3, 45), (10, 75), (18, 225)] {
        println!("char sum m={m} g={g}: {:.12} vs {:.12}", char_sum_direct(m, g)?, char_sum_factored(m, g)?);
    }
    println!("{:?}", specfun_suite(105)?);
    Ok(())
}
