//! Exact audits: multiplier closed forms and the Bruhat partition.

use halfint_rtf::cosets::{classify, hecke_reps};
use halfint_rtf::harness::{bruhat_partition, multiplier_audit};
use halfint_rtf::multiplier::{t_general, Mat2};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let audit = multiplier_audit(225, 240)?;
    println!("multiplier: {} upper, {} lower, {} mismatches", audit.upper_checked, audit.lower_checked, audit.mismatches.len());
    for n in [1, 9, 25] {
        let p = bruhat_partition(n, 60)?;
        println!("n={n}: {} boxed matrices, cells {:?}, pass {}", p.boxed, p.per_cell, p.pass());
    }
    for tau in hecke_reps(9)? {
        println!("{tau}: {:?} t={:?}", classify(tau, 9)?.tag(), t_general(tau)?);
    }
    let gamma = Mat2::new(7, 2, 24, 7);
    println!("{gamma} in G_4(1)? {} -> {:?}", gamma.in_g4(1), classify(gamma, 1)?);
    Ok(())
}
