//! `absq`: count abelian squares from the command line.
//!
//! Every subcommand produces an [`OutputRecord`] rendered as plain text, CSV
//! or JSON. Exit status is 0 on success, 1 on usage or I/O errors and 2 when
//! a cross-check fails.

pub mod commands;
pub mod output;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

pub use output::{Format, OutputRecord, Row};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_VERIFY: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "absq",
    version,
    about = "Exact and asymptotic counts of abelian squares"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Plain)]
    pub format: Format,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact number of abelian squares of length 2n over k letters.
    Count(CountArgs),
    /// Grid of exact counts, k = 2..=k-max by n = 0..=n-max.
    Table(TableArgs),
    /// Asymptotic estimate, with the exact ratio when affordable.
    Asym(AsymArgs),
    /// Exact / estimate ratios for a list of n.
    Ratio(RatioArgs),
    /// Cross-check every counting formula and the brute-force oracle.
    Check(CheckArgs),
    /// Report abelian-square factors of a file.
    Scan(ScanArgs),
    /// List every abelian square of length 2n.
    Enum(EnumArgs),
    /// Monte Carlo estimate of the abelian-square probability.
    Sample(SampleArgs),
}

#[derive(Debug, Args)]
pub struct CountArgs {
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub n: usize,
    /// auto, recurrence, split, multinomial or binary.
    #[arg(long, default_value = "auto")]
    pub method: String,
    /// Recompute with a second formula and fail (exit 2) on disagreement.
    #[arg(long)]
    pub verify: bool,
    #[arg(long, hide = true)]
    pub inject_fault: bool,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    #[arg(long, default_value_t = 6)]
    pub k_max: usize,
    #[arg(long, default_value_t = 7)]
    pub n_max: usize,
}

#[derive(Debug, Args)]
pub struct AsymArgs {
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub n: u64,
    /// Report natural logarithms only.
    #[arg(long)]
    pub log: bool,
}

#[derive(Debug, Args)]
pub struct RatioArgs {
    #[arg(long)]
    pub k: usize,
    /// Comma-separated list of half-lengths.
    #[arg(long, value_delimiter = ',', num_args = 1.., default_values_t = [10u64, 100, 1000])]
    pub n: Vec<u64>,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    #[arg(long, default_value_t = 6)]
    pub k_max: usize,
    #[arg(long, default_value_t = 7)]
    pub n_max: usize,
    #[arg(long, hide = true)]
    pub inject_fault: bool,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    #[arg(long)]
    pub file: PathBuf,
    /// Smallest half-length reported.
    #[arg(long, default_value_t = 1)]
    pub min_len: usize,
    /// Largest half-length reported (unbounded by default).
    #[arg(long)]
    pub max_len: Option<usize>,
    /// Declared alphabet: its bytes become letters 1, 2, ... in order, and
    /// any other byte in the file is an error.
    #[arg(long)]
    pub alphabet: Option<String>,
}

#[derive(Debug, Args)]
pub struct EnumArgs {
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub n: usize,
    /// Lift the 2^31 size guard.
    #[arg(long)]
    pub force: bool,
}

#[derive(Debug, Args)]
pub struct SampleArgs {
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 100_000)]
    pub trials: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

/// Failure of a command, carrying its exit status.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Io(String),
    /// A cross-check disagreed; the record holds the full report.
    Verification(Box<OutputRecord>),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Io(_) => EXIT_USAGE,
            CliError::Verification(_) => EXIT_VERIFY,
        }
    }
}

impl From<absq_core::Error> for CliError {
    fn from(e: absq_core::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

/// Parses `args` (including the program name), runs the command and returns
/// the exit status. Results go to `out`, diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{}", e.render());
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let format = cli.format;
    let (record, code) = match commands::dispatch(cli.command) {
        Ok(record) => (Some(record), EXIT_OK),
        Err(CliError::Verification(record)) => {
            let _ = writeln!(err, "absq: verification failed");
            (Some(*record), EXIT_VERIFY)
        }
        Err(CliError::Usage(msg) | CliError::Io(msg)) => {
            let _ = writeln!(err, "absq: {msg}");
            (None, EXIT_USAGE)
        }
    };
    if let Some(record) = record {
        if let Err(e) = record.write(format, out) {
            let _ = writeln!(err, "absq: writing output: {e}");
            return EXIT_USAGE;
        }
    }
    code
}
