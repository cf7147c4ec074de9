//! Petersson norm of the plus space generator: Gram quadrature against the symmetric square route.

use halfint_rtf::params::{OddSquare, Weight};
use halfint_rtf::spectral::moment::{SpectralConfig, SpectralData};
use halfint_rtf::spectral::symsq::sym2_norm_check;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for w in [13u32, 17] {
        let data = SpectralData::build(SpectralConfig::new(Weight::new(w)?, OddSquare::ONE))?;
        let c = sym2_norm_check(&data)?;
        println!(
            "kappa={}/2: gram={:.10e} formula={:.10e} ratio={:.6} L(1,sym2)={:.6} (cutoff change {:.1e}) L(1/2)={:.6}",
            w, c.gram_norm, c.formula_norm, c.ratio, c.l_sym2, c.l_sym2_tail, c.l_half
        );
    }
    Ok(())
}
