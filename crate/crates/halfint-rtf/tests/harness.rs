//! Reports, caching and table output of the harness.

use std::path::PathBuf;

use halfint_rtf::geometric::{j_reg, GeomConfig, OracleFamily, OracleLimits, SpectralPoint};
use halfint_rtf::harness::cache::{spectral_data, Cache};
use halfint_rtf::harness::oracle::run_oracle_case;
use halfint_rtf::harness::verify::run_verify_with;
use halfint_rtf::harness::{run_asymptotic_sweep, run_verify, HarnessError, OracleCase, Tolerances, VerificationReport};
use halfint_rtf::params::{OddSquare, Weight};
use halfint_rtf::spectral::moment::SpectralConfig;
use num_complex::Complex64;

fn scratch(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("rtf-{tag}-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    dir
}

fn w(x: u32) -> Weight {
    Weight::new(x).unwrap()
}

#[test]
fn report_is_recomputable_and_deterministic() {
    let a = run_verify(w(13), OddSquare::ONE, 1e-3, None).unwrap();
    assert!(a.pass);
    assert!(a.consistency_errors().is_empty(), "{:?}", a.consistency_errors());
    let json = serde_json::to_string_pretty(&a).unwrap();
    let back: VerificationReport = serde_json::from_str(&json).unwrap();
    assert_eq!(back, a);
    let b = run_verify(w(13), OddSquare::ONE, 1e-3, None).unwrap();
    assert_eq!(serde_json::to_string(&a.without_timings()).unwrap(), serde_json::to_string(&b.without_timings()).unwrap());

    let mut tampered = a.clone();
    tampered.geometric.reg[0].value.re.0 += 1.0;
    assert!(!tampered.consistency_errors().is_empty());
    let mut flipped = a.clone();
    flipped.pass = false;
    assert!(!flipped.consistency_errors().is_empty());
}

#[test]
fn itemized_regular_values_match_the_geometric_module() {
    let r = run_verify(w(13), OddSquare::ONE, 1e-3, None).unwrap();
    let direct = j_reg(&GeomConfig::new(w(13), OddSquare::ONE)).unwrap();
    for (item, d) in r.geometric.reg.iter().zip(&direct) {
        assert_eq!(Complex64::from(item.value), d.value);
        assert_eq!(item.m_max, d.m_max);
    }
}

#[test]
fn tight_tolerance_fails_without_error() {
    let r = run_verify(w(9), OddSquare::ONE, 1e-12, None).unwrap();
    assert!(!r.pass);
    assert!(r.relative_discrepancy.0 > 1e-12);
}

#[test]
fn preconditions_reject_bad_inputs() {
    assert!(matches!(run_verify(w(13), OddSquare::new(49).unwrap(), 1e-3, None), Err(HarnessError::Precondition(_))));
    assert!(OddSquare::new(4).is_err());
    let mismatched = run_verify_with(SpectralConfig::new(w(9), OddSquare::ONE), GeomConfig::new(w(13), OddSquare::ONE), 1e-3, None);
    assert!(matches!(mismatched, Err(HarnessError::Precondition(_))));
}

#[test]
fn stage_errors_carry_their_stage() {
    let mut geo = GeomConfig::new(w(9), OddSquare::ONE);
    geo.tail_tol = 1e-12;
    let err = run_verify_with(SpectralConfig::new(w(9), OddSquare::ONE), geo, 1e-3, None).unwrap_err();
    assert!(err.to_string().starts_with("regular stage"), "{err}");
}

#[test]
fn cache_round_trip_reproduces_the_report() {
    let dir = scratch("cache");
    let cache = Cache::new(&dir).unwrap();
    assert!(cache.entries().unwrap().is_empty());
    let first = run_verify(w(13), OddSquare::new(9).unwrap(), 1e-3, Some(&cache)).unwrap();
    let entries = cache.entries().unwrap();
    assert_eq!(entries.len(), 1);
    let config = SpectralConfig::new(w(13), OddSquare::new(9).unwrap());
    let loaded = cache.load(&config).unwrap().unwrap();
    assert!(loaded.hecke.contains_key(&9));
    assert_eq!(loaded, spectral_data(config, Some(&cache)).unwrap());
    let second = run_verify(w(13), OddSquare::new(9).unwrap(), 1e-3, Some(&cache)).unwrap();
    assert_eq!(first.without_timings(), second.without_timings());
    assert_eq!(cache.clear().unwrap(), 1);
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn cache_resolution_prefers_explicit_directory() {
    let dir = scratch("resolve");
    let c = Cache::resolve(Some(&dir)).unwrap().unwrap();
    assert_eq!(c.dir(), dir.as_path());
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn sweep_csv_rows_parse_back() {
    let t = run_asymptotic_sweep(&[w(9), w(13)], None).unwrap();
    let csv = t.to_csv();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines.len(), 3);
    for (line, row) in lines[1..].iter().zip(&t.rows) {
        let fields: Vec<&str> = line.split(',').collect();
        assert_eq!(fields[0], row.kappa);
        let r: f64 = fields[3].parse().unwrap();
        assert_eq!(r, row.remainder.0);
        let normalized: f64 = fields[2].parse().unwrap();
        let kappa: f64 = w(row.kappa.trim_end_matches("/2").parse().unwrap()).kappa();
        assert_eq!(r, normalized - kappa.ln());
    }
    assert!(t.pass());
}

#[test]
fn single_oracle_case_reports_its_range() {
    let case = OracleCase { family: OracleFamily::Reg3, weight: w(9), n: OddSquare::new(9).unwrap(), s: SpectralPoint::ZERO };
    let row = run_oracle_case(case, &OracleLimits::default(), &Tolerances::default()).unwrap();
    assert_eq!(row.m_range, Some((1, 8)));
    assert!(row.pass, "{row:?}");
}
