//! Spectral side against singular plus regular orbital integrals at `s = 0`.

use halfint_rtf::geometric::{j_reg, j_sing, GeomConfig, SpectralPoint};
use halfint_rtf::params::{OddSquare, Weight};
use halfint_rtf::spectral::moment::{SpectralConfig, SpectralData};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for (w, n) in [(9u32, 1i64), (13, 1), (13, 9)] {
        let w = Weight::new(w)?;
        let n = OddSquare::new(n)?;
        let s0 = SpectralPoint::real(0.0, 0.0);
        let mut data = SpectralData::build(SpectralConfig::new(w, n))?;
        let spec = data.j_spec(s0, n)?;
        let sing = j_sing(s0, n, w, 64)?;
        let reg: Vec<_> = j_reg(&GeomConfig::new(w, n))?.into_iter().map(|r| r.value).collect();
        let geo = sing + reg.iter().sum::<num_complex::Complex64>();
        println!("kappa={w} n={n}: spec={spec:.12e} sing={sing:.12e} reg={reg:?}");
        println!("  geo={geo:.12e} rel={:.3e}", (spec - geo).norm() / geo.norm());
    }
    Ok(())
}
