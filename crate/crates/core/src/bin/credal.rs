use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use credal_belief::report::{RunOptions, run_scenario};
use credal_belief::scenario::{load_scenario, parse_scenario};
use credal_belief::validate::{DEFAULT_TOLERANCE, ValidateOptions, cross_validate};
use credal_belief::{Error, report};

const URN_SCENARIO: &str = include_str!("../../scenarios/urn.json");

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "credal", version, about = "Belief functions induced by credal sets")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    /// Monte Carlo sample count (at least 1000).
    #[arg(long, global = true)]
    samples: Option<usize>,

    /// Monte Carlo seed.
    #[arg(long, global = true)]
    seed: Option<u64>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Compute the report for a scenario file.
    Run { scenario: PathBuf },
    /// Compare exact engines with Monte Carlo on the built-in cases.
    CrossValidate {
        /// Flag differences beyond this many standard errors.
        #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
        tolerance: f64,
    },
    /// The urn walkthrough: 30-40% black balls, then 15 black in 50 draws.
    Urn,
}

fn emit(format: Format, text: String, json: String) {
    match format {
        Format::Text => print!("{text}"),
        Format::Json => print!("{json}"),
    }
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    let opts = RunOptions {
        samples: cli.samples,
        seed: cli.seed,
    };
    match cli.command {
        Command::Run { scenario } => {
            let r = run_scenario(&load_scenario(&scenario)?, &opts)?;
            emit(cli.format, r.to_text(), r.to_json());
        }
        Command::Urn => {
            let r = run_scenario(&parse_scenario(URN_SCENARIO)?, &opts)?;
            emit(cli.format, r.to_text(), r.to_json());
        }
        Command::CrossValidate { tolerance } => {
            let defaults = ValidateOptions::default();
            let vopts = ValidateOptions {
                samples: cli.samples.unwrap_or(report::DEFAULT_SAMPLES),
                seed: cli.seed.unwrap_or(defaults.seed),
                tolerance,
            };
            let r = cross_validate(&vopts)?;
            emit(cli.format, r.to_text(), r.to_json());
            if !r.passed() {
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
