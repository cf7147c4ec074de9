//! Closed-form orbital integrals against direct evaluation from the defining matrix sums.

use halfint_rtf::geometric::{j_dual, j_reg_partial, j_small, oracle_raw, OracleFamily, OracleLimits, RegComponent, SpectralPoint};
use halfint_rtf::params::{OddSquare, Weight};
use halfint_rtf::specfun::rel_err;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let limits = OracleLimits::default();
    let w = Weight::new(13)?;
    for n in [1, 9] {
        let n = OddSquare::new(n)?;
        for s in [SpectralPoint::real(0.6, 0.7), SpectralPoint::real(0.8, 0.9)] {
            let raw = oracle_raw(OracleFamily::Small, s, n, w, &limits)?;
            let closed = j_small(s, n, w)?;
            println!("small n={n} s={s}: rel err {:.3e}", rel_err(raw.value, closed));
            let raw = oracle_raw(OracleFamily::Dual, s, n, w, &limits)?;
            let closed = j_dual(s, n, w)?;
            println!("dual  n={n} s={s}: rel err {:.3e}", rel_err(raw.value, closed));
        }
    }
    for w in [Weight::new(9)?, Weight::new(13)?] {
        for n in [1, 9] {
            let n = OddSquare::new(n)?;
            for (family, comp) in [(OracleFamily::Reg1, RegComponent::One), (OracleFamily::Reg2, RegComponent::Two), (OracleFamily::Reg3, RegComponent::Three)] {
                let raw = oracle_raw(family, SpectralPoint::ZERO, n, w, &limits)?;
                let Some((lo, hi)) = raw.m_range else {
                    println!("{family:?} kappa={w} n={n}: empty");
                    continue;
                };
                let closed = j_reg_partial(comp, n, w, lo, hi)?;
                println!("{family:?} kappa={w} n={n} m=1..={hi}: raw {:.10e} closed {:.10e} rel err {:.3e}", raw.value.re, closed.re, rel_err(raw.value, closed));
                let _ = lo;
            }
        }
    }
    Ok(())
}
