//! The remainder r(kappa) of the first moment asymptotic across weights, as CSV.

use halfint_rtf::harness::run_asymptotic_sweep;
use halfint_rtf::params::Weight;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let kappas: Vec<Weight> = (9..=29).step_by(2).map(Weight::new).collect::<Result<_, _>>()?;
    let table = run_asymptotic_sweep(&kappas, None)?;
    print!("{}", table.to_csv());
    eprintln!("max |r| {:.4}, max step {:.4}, pass {}", table.max_abs_remainder(), table.max_adjacent_variation(), table.pass());
    Ok(())
}
