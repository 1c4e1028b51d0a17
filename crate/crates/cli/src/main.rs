//! `rankfit` command-line tool.
//!
//! Exit codes: 0 success, 1 input/parse/validation error, 2 fit failure,
//! 64 bad flags or parameters.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use commands::CliError;

#[derive(Debug, Parser)]
#[command(
    name = "rankfit",
    version,
    about = "Fit rank-order laws to ranked positive data"
)]
pub struct Cli {
    /// Field delimiter for CSV/TSV input (`\t` or `tab` for tabs).
    #[arg(long, global = true, default_value = ",")]
    delimiter: String,

    /// Handling of zero or negative values in the input.
    #[arg(long, global = true, value_enum, default_value_t = ZeroPolicyArg::Drop)]
    zero_policy: ZeroPolicyArg,

    /// Input carries an explicit rank column.
    #[arg(long, global = true)]
    pre_ranked: bool,

    /// Write the primary output here instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,

    /// Suppress the human-readable summary, warnings and error messages.
    #[arg(long, short, global = true)]
    quiet: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ZeroPolicyArg {
    Reject,
    Drop,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModelArg {
    Zipf,
    Mandelbrot,
    Lavalette,
    BetaLike,
}

impl From<ModelArg> for rankfit::ModelKind {
    fn from(m: ModelArg) -> Self {
        match m {
            ModelArg::Zipf => rankfit::ModelKind::Zipf,
            ModelArg::Mandelbrot => rankfit::ModelKind::Mandelbrot,
            ModelArg::Lavalette => rankfit::ModelKind::Lavalette,
            ModelArg::BetaLike => rankfit::ModelKind::BetaLike,
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Fit one law and write a JSON report.
    Fit {
        input: PathBuf,
        #[arg(long, value_enum)]
        model: ModelArg,
    },
    /// Fit all four laws and compare them.
    Compare { input: PathBuf },
    /// Write a synthetic series drawn from a law as CSV.
    Generate(GenerateArgs),
    /// Run the Simon preferential-attachment process and write ranked counts.
    Simulate {
        /// Probability that a step founds a new source.
        #[arg(long, allow_negative_numbers = true)]
        p_new: f64,
        #[arg(long)]
        steps: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Fit a law and write rank/observed/fitted/residual columns as TSV.
    Plotdata {
        input: PathBuf,
        #[arg(long, value_enum)]
        model: ModelArg,
    },
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[arg(long, value_enum)]
    model: ModelArg,
    #[arg(long, allow_negative_numbers = true)]
    k: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    a: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    b: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    alpha: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    rho: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    epsilon: Option<f64>,
    #[arg(long)]
    n: usize,
    /// Standard deviation of the Gaussian noise added to log-values.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    sigma: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(64)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match commands::run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            if !cli.quiet {
                eprintln!("rankfit: {e}");
            }
            ExitCode::from(e.exit_code())
        }
    }
}

impl Cli {
    fn ingest_options(&self) -> Result<rankfit::IngestOptions, CliError> {
        let delimiter = match self.delimiter.as_str() {
            "\\t" | "tab" => '\t',
            s => {
                let mut chars = s.chars();
                match (chars.next(), chars.next()) {
                    (Some(c), None) => c,
                    _ => {
                        return Err(CliError::Usage(format!(
                            "delimiter must be a single character, got {s:?}"
                        )))
                    }
                }
            }
        };
        let mode = if self.pre_ranked {
            rankfit::IngestMode::PreRanked
        } else {
            rankfit::IngestMode::RawValues
        };
        let zero_policy = match self.zero_policy {
            ZeroPolicyArg::Reject => rankfit::ZeroPolicy::Reject,
            ZeroPolicyArg::Drop => rankfit::ZeroPolicy::DropWithWarning,
        };
        rankfit::IngestOptions::new(mode, zero_policy, delimiter)
            .map_err(|e| CliError::Usage(e.to_string()))
    }
}
