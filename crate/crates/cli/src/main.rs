//! `kmroots`: exact root multiplicities, root strings, and theorem
//! verification for symmetrizable Kac–Moody algebras.
//!
//! Exit codes: 0 success, 1 usage error, 2 invalid input, 3 engine or cache
//! integrity failure, 4 verification failure.

mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use config::Format;

/// CLI-level error: invalid user input is distinguished from engine errors
/// so each maps to its documented exit code.
#[derive(Debug)]
pub enum CliError {
    Input(String),
    Engine(kmroots::Error),
}

impl From<kmroots::Error> for CliError {
    fn from(e: kmroots::Error) -> Self {
        CliError::Engine(e)
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Input(s) => f.write_str(s),
            CliError::Engine(e) => write!(f, "{e}"),
        }
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        use kmroots::Error as E;
        match self {
            CliError::Input(_) => 2,
            CliError::Engine(e) => match e {
                E::CorruptCache { .. }
                | E::ZeroDenominator { .. }
                | E::NonIntegerMultiplicity { .. }
                | E::CertificateViolated { .. }
                | E::OracleBoundExceeded(_)
                | E::SearchBoundExceeded(_)
                | E::Io(_) => 3,
                _ => 2,
            },
        }
    }
}

#[derive(Parser)]
#[command(
    name = "kmroots",
    version,
    about = "Exact root multiplicities and root strings for symmetrizable Kac-Moody algebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Cache directory for multiplicity tables (overrides KMROOTS_CACHE_DIR
    /// and the config file; without any of these, tables stay in memory).
    #[arg(long, global = true, value_name = "DIR")]
    cache_dir: Option<PathBuf>,

    /// Output format.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Config file (default: $XDG_CONFIG_HOME/kmroots/config.json).
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a matrix file: GCM conditions, symmetrizer, type, null root.
    Validate {
        /// JSON file of the form {"name": "...", "rows": [[2,-1],[-1,2]]}
        matrix: PathBuf,
    },
    /// List the positive roots with norms and multiplicities up to a height.
    Roots {
        matrix: PathBuf,
        /// Height bound (default by rank: 40 for rank ≤ 3, 24 for rank 4,
        /// 12 beyond).
        #[arg(long)]
        max_height: Option<i64>,
    },
    /// Extract, classify, and certify one root string.
    String {
        matrix: PathBuf,
        /// Base point: comma-separated coefficients, e.g. 1,0,2 (0,0,0 is
        /// the lattice origin).
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        /// Direction: comma-separated coefficients of a root.
        #[arg(long, allow_hyphen_values = true)]
        beta: String,
        /// Reporting window a..b containing 0 (default -12..12).
        #[arg(long, allow_hyphen_values = true)]
        window: Option<String>,
        #[arg(long)]
        max_height: Option<i64>,
    },
    /// Run the verification battery over a matrix file or the built-in
    /// corpus; exits 0 iff every check passes.
    Verify {
        matrix: Option<PathBuf>,
        /// Verify the built-in six-matrix corpus.
        #[arg(long, conflicts_with = "matrix")]
        corpus: bool,
        /// Table height override (default per rank: 26 / 30).
        #[arg(long)]
        max_height: Option<i64>,
    },
}

fn run(cli: Cli) -> Result<(String, u8), CliError> {
    let settings = config::resolve(cli.cache_dir, cli.format, cli.config.as_deref())?;
    match cli.command {
        Command::Validate { matrix } => {
            commands::cmd_validate(&matrix, &settings).map(|s| (s, 0))
        }
        Command::Roots { matrix, max_height } => {
            commands::cmd_roots(&matrix, max_height, &settings).map(|s| (s, 0))
        }
        Command::String {
            matrix,
            alpha,
            beta,
            window,
            max_height,
        } => commands::cmd_string(
            &matrix,
            &alpha,
            &beta,
            window.as_deref(),
            max_height,
            &settings,
        )
        .map(|s| (s, 0)),
        Command::Verify {
            matrix,
            corpus,
            max_height,
        } => commands::cmd_verify(matrix.as_deref(), corpus, max_height, &settings)
            .map(|(s, passed)| (s, if passed { 0 } else { 4 })),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    print!("{e}");
                    ExitCode::SUCCESS
                }
                _ => {
                    eprint!("{e}");
                    ExitCode::from(1)
                }
            };
        }
    };
    match run(cli) {
        Ok((text, code)) => {
            print!("{text}");
            ExitCode::from(code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
