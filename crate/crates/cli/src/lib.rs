//! The `foon` command: validate and merge FOON files, retrieve task trees,
//! and tabulate retrieval sizes across algorithms.

mod benchmark;
mod commands;
mod inputs;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use foon_core::Algorithm;

pub use benchmark::{render_tables, AlgorithmOutcome, BenchmarkRow};
pub use commands::slugify;

pub const EXIT_OK: i32 = 0;
pub const EXIT_UNREACHABLE: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_IO: i32 = 3;
pub const EXIT_USAGE: i32 = 64;

#[derive(Debug, Parser)]
#[command(
    name = "foon",
    version,
    about = "FOON knowledge files and task-tree retrieval"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Parse FOON files and report diagnostics and counts.
    Validate {
        #[arg(required = true)]
        paths: Vec<PathBuf>,
    },
    /// Combine FOON files into one deduplicated network.
    Merge {
        #[arg(required = true)]
        paths: Vec<PathBuf>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Retrieve one task tree per goal.
    Retrieve {
        #[command(flatten)]
        problem: ProblemArgs,
        #[arg(long, value_enum)]
        algorithm: AlgorithmArg,
        #[arg(long, value_enum, default_value = "foon")]
        format: Format,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run all three algorithms on every goal and print size tables.
    Benchmark {
        #[command(flatten)]
        problem: ProblemArgs,
        /// Directory for benchmark.json.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
struct ProblemArgs {
    /// FOON knowledge file; repeat to merge several.
    #[arg(long, required = true)]
    foon: Vec<PathBuf>,
    /// JSON array of kitchen items.
    #[arg(long)]
    kitchen: PathBuf,
    /// Utensil labels, one per line.
    #[arg(long)]
    utensils: PathBuf,
    /// JSON array of goal specs.
    #[arg(long)]
    goals: PathBuf,
    /// JSON object of motion success probabilities.
    #[arg(long)]
    motions: Option<PathBuf>,
    /// Largest IDS depth bound; defaults to the network size.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    max_depth: Option<u64>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum AlgorithmArg {
    Ids,
    GbfsH1,
    GbfsH2,
}

impl From<AlgorithmArg> for Algorithm {
    fn from(arg: AlgorithmArg) -> Self {
        match arg {
            AlgorithmArg::Ids => Algorithm::Ids,
            AlgorithmArg::GbfsH1 => Algorithm::GbfsH1,
            AlgorithmArg::GbfsH2 => Algorithm::GbfsH2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Foon,
    Json,
    Dot,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Foon => "foon",
            Format::Json => "json",
            Format::Dot => "dot",
        }
    }
}

/// A failure that ends the command with a fixed exit code.
#[derive(Debug)]
pub(crate) struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    pub fn io(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_IO,
            message: message.into(),
        }
    }

    pub fn parse(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_PARSE,
            message: message.into(),
        }
    }
}

/// Runs the command line `args` (program name first) and returns the exit
/// code. Results go to `stdout`; diagnostics and warnings go to `stderr`.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            let text = err.render().to_string();
            return match err.kind() {
                ErrorKind::DisplayHelp
                | ErrorKind::DisplayVersion
                | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => {
                    let _ = stdout.write_all(text.as_bytes());
                    EXIT_OK
                }
                _ => {
                    let _ = stderr.write_all(text.as_bytes());
                    EXIT_USAGE
                }
            };
        }
    };
    let result = match cli.command {
        Command::Validate { paths } => commands::validate(&paths, stdout, stderr),
        Command::Merge { paths, out } => commands::merge(&paths, &out, stdout, stderr),
        Command::Retrieve {
            problem,
            algorithm,
            format,
            out,
        } => inputs::load(&problem, stderr).and_then(|loaded| {
            commands::retrieve_goals(&loaded, algorithm.into(), format, &out, stdout, stderr)
        }),
        Command::Benchmark { problem, out } => inputs::load(&problem, stderr)
            .and_then(|loaded| benchmark::benchmark(&loaded, out.as_deref(), stdout, stderr)),
    };
    match result {
        Ok(code) => code,
        Err(failure) => {
            let _ = writeln!(stderr, "error: {}", failure.message);
            failure.code
        }
    }
}
