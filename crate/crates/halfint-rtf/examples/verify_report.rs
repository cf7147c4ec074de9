//! End-to-end verification with a JSON report, optionally cached via RTF_CACHE_DIR.

use halfint_rtf::harness::{run_verify, Cache};
use halfint_rtf::params::{OddSquare, Weight};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cache = Cache::resolve(None)?;
    let report = run_verify(Weight::new(13)?, OddSquare::new(9)?, 1e-3, cache.as_ref())?;
    println!("{}", serde_json::to_string_pretty(&report)?);
    eprintln!("recomputation issues: {:?}", report.consistency_errors());
    Ok(())
}
