//! Command-line front end for the `xxpaths` library.
//!
//! Every verb prints one JSON document (or CSV with `--format csv`) on
//! standard output. Errors go to standard error as JSON. Exit codes: 0 on
//! success, 1 when a verification fails, 2 on bad input, 3 when a resource
//! cap is exceeded.

pub mod args;
pub mod commands;
pub mod config;
pub mod output;
pub mod parse;

use clap::error::ErrorKind;
use clap::Parser;
use xxpaths::Limits;

use crate::args::Cli;
use crate::output::{CliError, EXIT_OK, EXIT_VERIFICATION_FAILED};

/// What a run wrote and how it ended.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunResult {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl RunResult {
    fn error(e: &CliError) -> Self {
        RunResult {
            code: e.exit_code(),
            stdout: String::new(),
            stderr: format!("{}\n", e.to_json()),
        }
    }
}

pub fn run(argv: Vec<String>) -> RunResult {
    let argv = match config::expand(argv) {
        Ok(a) => a,
        Err(e) => return RunResult::error(&e),
    };
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            return RunResult {
                code: EXIT_OK,
                stdout: e.to_string(),
                stderr: String::new(),
            }
        }
        Err(e) => return RunResult::error(&CliError::Usage(e.to_string().trim_end().to_string())),
    };
    match execute(&cli) {
        Ok(r) => r,
        Err(e) => RunResult::error(&e),
    }
}

fn execute(cli: &Cli) -> Result<RunResult, CliError> {
    let g = &cli.global;
    if g.enumeration_cap == 0 || g.sector_cap == 0 {
        return Err(CliError::Usage("caps must be positive".into()));
    }
    if !(g.tolerance_scale.is_finite() && g.tolerance_scale >= 0.0) {
        return Err(CliError::Usage("--tolerance-scale must be a finite non-negative number".into()));
    }
    let limits = Limits {
        enumeration: g.enumeration_cap,
        sector_dimension: g.sector_cap,
    };
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(threads) = g.threads {
        if threads == 0 {
            return Err(CliError::Usage("--threads must be at least 1".into()));
        }
        pool = pool.num_threads(threads);
    }
    let pool = pool.build().map_err(|e| CliError::Io(e.to_string()))?;
    let doc = pool.install(|| commands::dispatch(&cli.command, &limits, g.tolerance_scale))?;
    Ok(RunResult {
        code: if doc.passed { EXIT_OK } else { EXIT_VERIFICATION_FAILED },
        stdout: doc.render(g.format),
        stderr: String::new(),
    })
}
