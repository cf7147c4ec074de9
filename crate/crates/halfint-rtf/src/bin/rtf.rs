//! Command line driver for the verification harness.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use num_complex::Complex64;

use halfint_rtf::geometric::{OracleFamily, OracleLimits, SpectralPoint};
use halfint_rtf::harness::oracle::run_oracle_case;
use halfint_rtf::harness::{multiplier_audit, run_asymptotic_sweep, run_verify, Cache, Decimal17, OracleCase, Tolerances};
use halfint_rtf::params::{OddSquare, Weight};

#[derive(Parser)]
#[command(name = "rtf", version, about = "Relative trace formula checks for half-integral weight forms on Gamma0(4)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Spectral side against the geometric side at s = 0.
    Verify {
        #[arg(long)]
        kappa: Weight,
        #[arg(long)]
        n: i64,
        #[arg(long, default_value_t = 1e-3)]
        tol: f64,
        /// Write the JSON report here.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Spectral data cache; defaults to $RTF_CACHE_DIR.
        #[arg(long)]
        cache_dir: Option<PathBuf>,
    },
    /// First moment remainder r(kappa) at n = 1.
    Sweep {
        #[arg(long, value_delimiter = ',', required = true)]
        kappas: Vec<Weight>,
        /// Write the CSV table here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        cache_dir: Option<PathBuf>,
    },
    /// One closed form against its raw oracle.
    Oracle {
        #[arg(long)]
        family: OracleFamily,
        #[arg(long)]
        kappa: Weight,
        #[arg(long)]
        n: i64,
        /// Re s1, Im s1, Re s2, Im s2.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_values_t = [0.0, 0.0, 0.0, 0.0])]
        s: Vec<f64>,
        /// Closed-form indices covered by the regular oracles.
        #[arg(long, default_value_t = OracleLimits::default().reg_m_max)]
        reg_m_max: u64,
    },
    /// Closed-form multipliers against the cocycle route.
    MultiplierAudit {
        #[arg(long, default_value_t = 225)]
        nmax: i64,
        #[arg(long, default_value_t = 240)]
        mmax: i64,
    },
    /// List or clear cached spectral data.
    Cache {
        /// Cache directory; defaults to $RTF_CACHE_DIR.
        #[arg(long)]
        dir: Option<PathBuf>,
        #[arg(long)]
        clear: bool,
    },
}

fn d17(x: f64) -> Decimal17 {
    Decimal17(x)
}

fn verdict(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}

fn run(cli: Cli) -> Result<bool, Box<dyn std::error::Error>> {
    match cli.command {
        Command::Verify { kappa, n, tol, out, cache_dir } => {
            let cache = Cache::resolve(cache_dir.as_deref())?;
            let report = run_verify(kappa, OddSquare::new(n)?, tol, cache.as_ref())?;
            println!("kappa {} n {}", report.kappa, report.n);
            println!("spectral {}", report.spectral.value);
            println!("j_sing {}", report.geometric.j_sing);
            for r in &report.geometric.reg {
                println!("j_reg{} {} m_max {} tail {}", r.component, r.value, r.m_max, r.tail_estimate);
            }
            println!("geometric {}", report.geometric.total);
            println!("relative_discrepancy {}", report.relative_discrepancy);
            println!("budget {}", report.budgets.total);
            if let Some(path) = out {
                std::fs::write(&path, serde_json::to_string_pretty(&report)?)?;
            }
            println!("{}", verdict(report.pass));
            Ok(report.pass)
        }
        Command::Sweep { kappas, out, cache_dir } => {
            let cache = Cache::resolve(cache_dir.as_deref())?;
            let table = run_asymptotic_sweep(&kappas, cache.as_ref())?;
            match out {
                Some(path) => std::fs::write(path, table.to_csv())?,
                None => print!("{}", table.to_csv()),
            }
            eprintln!("max |r| {} max step {}", d17(table.max_abs_remainder()), d17(table.max_adjacent_variation()));
            eprintln!("{}", verdict(table.pass()));
            Ok(table.pass())
        }
        Command::Oracle { family, kappa, n, s, reg_m_max } => {
            if s.len() != 4 {
                return Err(format!("--s needs RE1,IM1,RE2,IM2, got {} values", s.len()).into());
            }
            let point = SpectralPoint::new(Complex64::new(s[0], s[1]), Complex64::new(s[2], s[3]));
            let limits = OracleLimits { reg_m_max, ..OracleLimits::default() };
            let case = OracleCase { family, weight: kappa, n: OddSquare::new(n)?, s: point };
            let row = run_oracle_case(case, &limits, &Tolerances::default())?;
            println!("raw {}", row.raw);
            println!("closed {}", row.closed);
            if let Some((lo, hi)) = row.m_range {
                println!("m_range {lo} {hi}");
            }
            println!("rel_err {} tol {}", row.rel_err, row.tol);
            println!("{}", verdict(row.pass));
            Ok(row.pass)
        }
        Command::MultiplierAudit { nmax, mmax } => {
            let audit = multiplier_audit(nmax, mmax)?;
            println!("upper {} lower {} mismatches {}", audit.upper_checked, audit.lower_checked, audit.mismatches.len());
            for m in audit.mismatches.iter().take(20) {
                println!("mismatch {} closed {:?} general {:?}", m.gamma, m.closed, m.general);
            }
            println!("{}", verdict(audit.pass()));
            Ok(audit.pass())
        }
        Command::Cache { dir, clear } => {
            let Some(cache) = Cache::resolve(dir.as_deref())? else {
                return Err("no cache directory: pass --dir or set RTF_CACHE_DIR".into());
            };
            println!("dir {}", cache.dir().display());
            if clear {
                println!("removed {}", cache.clear()?);
            } else {
                for e in cache.entries()? {
                    println!("{} {}", e.path.display(), e.bytes);
                }
            }
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
