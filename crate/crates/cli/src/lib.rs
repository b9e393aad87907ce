//! Command-line front end for `abelchi-core`.

pub mod commands;
pub mod error;
pub mod report;
pub mod suites;

use std::path::PathBuf;

use clap::{Parser, Subcommand};

use crate::error::{CliError, EXIT_VERDICT};
use crate::report::{render_human, render_json, Report};
use crate::suites::Suite;

#[derive(Debug, Parser)]
#[command(
    name = "abelchi",
    version,
    about = "Exact Abel-method Euler characteristics"
)]
pub struct Cli {
    /// Emit machine-readable JSON.
    #[arg(long, global = true)]
    pub json: bool,
    /// Prefix human output with the generation time.
    #[arg(long, global = true)]
    pub timestamps: bool,
    /// Number of terms for `oracle` and `delta`.
    #[arg(long, global = true, default_value_t = 8)]
    pub terms: usize,
    /// Tolerance for `holder`.
    #[arg(long, global = true, default_value_t = 1e-6)]
    pub tol: f64,
    /// Number of materialized terms for `holder`.
    #[arg(long, global = true, default_value_t = 100_000)]
    pub horizon: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Abel-method Euler characteristic, generating function and growth class.
    Chi {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Growth predicates of a sequence or of a complex's signed homology ranks.
    Classify {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Exact generating function.
    Genfun {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Connecting-homomorphism ranks of a short exact sequence.
    Delta {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Admissibility of a short exact sequence.
    Admissible {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Additivity of the characteristic on a short exact sequence.
    Additivity {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// The periodic complex Xi C of a bounded complex.
    Xi {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Series coefficients next to sequence terms.
    Oracle {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Numeric Hölder limit against the exact Abel limit.
    Holder {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Run a named verification suite.
    Verify { suite: Suite },
}

pub fn execute(cli: &Cli) -> Result<Vec<Report>, CliError> {
    use commands as c;
    let each =
        |files: &[PathBuf],
         f: &dyn Fn(&str, abelchi_core::document::Document) -> Result<Report, CliError>| {
            files
                .iter()
                .map(|p| f(&p.display().to_string(), c::load(p)?))
                .collect::<Result<Vec<_>, _>>()
        };
    match &cli.command {
        Command::Chi { files } => each(files, &c::chi),
        Command::Classify { files } => each(files, &c::classify),
        Command::Genfun { files } => each(files, &c::genfun),
        Command::Delta { files } => each(files, &|i, d| c::delta(i, d, cli.terms)),
        Command::Admissible { files } => each(files, &c::admissible),
        Command::Additivity { files } => each(files, &c::additivity),
        Command::Xi { files } => each(files, &c::xi_cmd),
        Command::Oracle { files } => each(files, &|i, d| c::oracle(i, d, cli.terms)),
        Command::Holder { files } => each(files, &|i, d| c::holder(i, d, cli.tol, cli.horizon)),
        Command::Verify { suite } => Ok(vec![suites::run(*suite)?]),
    }
}

/// Rendered output and exit status.
pub fn run(cli: &Cli) -> (String, String, u8) {
    match execute(cli) {
        Ok(reports) => {
            let out = if cli.json {
                render_json(&reports)
            } else {
                let stamp = cli.timestamps.then(|| {
                    humantime::format_rfc3339_seconds(std::time::SystemTime::now()).to_string()
                });
                render_human(&reports, stamp.as_deref())
            };
            let code = if reports.iter().all(Report::passed) {
                0
            } else {
                EXIT_VERDICT
            };
            (out, String::new(), code)
        }
        Err(e) => (String::new(), format!("abelchi: {e}\n"), e.exit_code()),
    }
}
