//! Cusp form basis, Gram matrix and Hecke eigenvalues at weight 13/2.

use halfint_rtf::params::{OddSquare, Weight};
use halfint_rtf::spectral::moment::{SpectralConfig, SpectralData};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let w = Weight::new(13)?;
    let ops = [OddSquare::new(9)?, OddSquare::new(25)?];
    let mut data = SpectralData::build(SpectralConfig::new(w, ops[1]))?;
    println!("kappa={w}: dim {} truncation {}", data.basis.dim(), data.basis.truncation());
    for (i, (f, expo)) in data.basis.members.iter().zip(&data.basis.exponents).enumerate() {
        let head: Vec<f64> = (1..8).map(|n| f.coeff(n)).collect();
        println!("E_{i} = theta^{} F2^{} (theta^4 - 16 F2): {head:?}", expo.0, expo.1);
    }
    println!("Gram:\n{:.6e}(coarse-grid estimate {:.1e})", data.gram.matrix, data.gram.error_estimate);
    println!("plus space coordinates:\n{:.6}", data.basis.plus_space());
    for n in ops {
        println!("T_{n}:\n{:.6}", data.hecke(n)?);
    }
    for f in data.eigenforms(&ops)?.forms {
        let lam: Vec<String> = ops.iter().map(|&n| format!("Lambda({n})={:.10}", f.lambda(n, w).unwrap_or(f64::NAN))).collect();
        println!("eigenform: {} L(1/2)={:.10e}", lam.join(" "), f.central_value);
    }
    Ok(())
}
