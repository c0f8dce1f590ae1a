//! Command-line front end: a TOML run description in, CSV files and a
//! `.meta` sidecar out.

mod config;
mod output;
mod run;
mod selftest;

use std::path::PathBuf;

use clap::Parser;

pub use config::{AmplitudeUnit, MapOptions, Mode, Provenance, RowAxis, RunConfig, StrainConfig, StrainKind, SCHEMA_VERSION};
pub use output::{content_hash, render_csv, row_path, sidecar_path, Cell, OutputFile};
pub use run::{run, RunOutput};
pub use selftest::{self_test, Check};

use crate::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_INVARIANT: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "nv-odmr", version, about = "Dual-frequency ODMR simulator for NV centres")]
pub struct Args {
    /// Run description (TOML). A `.meta` sidecar is accepted as well.
    #[arg(long)]
    pub config: PathBuf,
    /// Output CSV path, overrides `output_path`.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Worker threads, overrides `workers`.
    #[arg(long)]
    pub workers: Option<usize>,
    /// Run the invariant self-tests with the configured parameters and exit
    /// without writing output.
    #[arg(long)]
    pub seed_check: bool,
}

/// Exit status for an error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InvariantViolation { .. } => EXIT_INVARIANT,
        Error::Io(_) => EXIT_IO,
        _ => EXIT_CONFIG,
    }
}

fn execute(args: &Args) -> crate::Result<RunOutput> {
    let mut cfg = RunConfig::from_file(&args.config)?;
    if let Some(w) = args.workers {
        cfg.workers = w;
    }
    let out = run(&cfg, args.out.as_deref())?;
    out.write()?;
    Ok(out)
}

fn seed_check(args: &Args) -> i32 {
    let cfg = match RunConfig::from_file(&args.config) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return exit_code(&e);
        }
    };
    let checks = self_test(&cfg);
    for c in &checks {
        println!("{} {}: {}", if c.passed { "ok" } else { "FAILED" }, c.name, c.detail);
    }
    if checks.iter().all(|c| c.passed) {
        EXIT_OK
    } else {
        EXIT_INVARIANT
    }
}

/// Runs the CLI and returns the process exit status.
pub fn main_with_args(args: &Args) -> i32 {
    if args.seed_check {
        return seed_check(args);
    }
    match execute(args) {
        Ok(out) => {
            for f in &out.files {
                println!("wrote {}", f.path.display());
            }
            println!("wrote {}", out.sidecar.path.display());
            println!("content_hash {}", out.content_hash);
            if let Some(r) = &out.report {
                println!(
                    "invariants: max trace drift {:.2e}, max hermiticity defect {:.2e}, min eigenvalue {:.2e}",
                    r.max_trace_drift, r.max_hermiticity_defect, r.min_eigenvalue
                );
            }
            EXIT_OK
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}
