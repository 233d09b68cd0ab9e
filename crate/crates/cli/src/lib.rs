//! Front end for the `hgcong` binary. [`run`] parses arguments, dispatches
//! to the verification library and maps the outcome to an exit code:
//! 0 when every gating report passes or is skipped, 1 on any failure, 2 on
//! usage, configuration or output errors.

pub mod config;
pub mod emit;

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};

use clap::Parser;
use hgcong_core::verify::{
    run_lemma_suite, scan_range, supercongruence_probe, verify_theorem_with, JPolicy, SuiteId,
    SuiteParams, PROBE_ID,
};
use hgcong_core::CongruenceReport;

pub use config::{Cli, Command, OutputFormat, RunConfig};
pub use emit::emit_report;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] hgcong_core::Error),
    #[error("output: {0}")]
    Io(#[from] io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Reports produced by one invocation, plus whether a sweep hit the point
/// bound.
pub struct RunOutcome {
    pub reports: Vec<CongruenceReport>,
    pub truncated: bool,
}

/// Probe reports are informational and never affect the exit code.
pub fn gating_failure(reports: &[CongruenceReport]) -> bool {
    reports
        .iter()
        .any(|r| r.is_fail() && r.check_id != PROBE_ID)
}

pub fn execute(config: &RunConfig) -> Result<RunOutcome, CliError> {
    let opts = config.options();
    let per_instance = |f: &dyn Fn(&hgcong_core::arith::Rational, u64) -> CongruenceReport| {
        let js = config.j.clone().unwrap_or_default();
        let mut reports = Vec::new();
        for p in config.primes() {
            for j in &js {
                reports.push(f(j, p));
            }
        }
        reports
    };
    let outcome = match &config.command {
        Command::Theorem => RunOutcome {
            reports: per_instance(&|j, p| verify_theorem_with(j, p, &opts)),
            truncated: false,
        },
        Command::Probe => RunOutcome {
            reports: per_instance(&|j, p| supercongruence_probe(j, p, &opts)),
            truncated: false,
        },
        Command::Scan => {
            let out = scan_range(config.p_min, config.p_max, &config.j_policy(), &opts)?;
            RunOutcome {
                reports: out.reports,
                truncated: out.truncated,
            }
        }
        Command::Lemma { .. } => {
            let suite = config.suite()?.expect("lemma subcommand has a suite");
            RunOutcome {
                reports: run_lemma_suite(suite, &suite_params(config, config.l)),
                truncated: false,
            }
        }
        Command::Selftest => {
            let params = suite_params(config, 2);
            let mut reports = Vec::new();
            for suite in SuiteId::ALL {
                reports.extend(run_lemma_suite(suite, &params));
            }
            let sweep = scan_range(5, 37, &JPolicy::AllResidues, &opts)?;
            reports.extend(sweep.reports);
            RunOutcome {
                reports,
                truncated: sweep.truncated,
            }
        }
    };
    Ok(outcome)
}

fn suite_params(config: &RunConfig, l_max: u32) -> SuiteParams {
    SuiteParams {
        p_min: config.p.unwrap_or(config.p_min),
        p_max: config.p.unwrap_or(config.p_max),
        l_max,
        factorization_l2: config.factorization_l2,
        j_values: config.j.clone(),
        options: config.options(),
        ..SuiteParams::default()
    }
}

fn write_reports(config: &RunConfig, reports: &[CongruenceReport]) -> Result<(), CliError> {
    match &config.out {
        Some(path) => {
            let file = File::create(path)?;
            let mut w = BufWriter::new(file);
            emit_report(reports, config.output, &mut w)?;
            w.flush()?;
        }
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            emit_report(reports, config.output, &mut lock)?;
        }
    }
    Ok(())
}

/// Entry point shared by the binary and the tests.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let config = match RunConfig::try_from(cli) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            eprintln!("run `hgcong --help` for usage");
            return EXIT_USAGE;
        }
    };
    let outcome = match execute(&config) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    if outcome.truncated {
        eprintln!(
            "warning: some instances exceed the point-count bound {}; results are partial",
            config.bound
        );
    }
    if let Err(e) = write_reports(&config, &outcome.reports) {
        eprintln!("error: {e}");
        return EXIT_USAGE;
    }
    if gating_failure(&outcome.reports) {
        EXIT_FAIL
    } else {
        EXIT_OK
    }
}
