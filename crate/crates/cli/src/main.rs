use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use specht_core::Error;

mod commands;
mod report;

#[derive(Debug, Parser)]
#[command(name = "specht", version, about = "Specht ideals: generators, radicals, varieties and Betti tables")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[command(flatten)]
    config: RunConfig,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Standard Specht generators of a shape.
    Gens,
    /// Hilbert function of R/I^Sp.
    Hilbert,
    /// Compare I^Sp with I_{n, λ1+1} degree by degree.
    RadicalCheck,
    /// Minimal primes of I^Sp as set partitions.
    MinimalPrimes,
    /// Height and purity of the variety.
    Purity,
    /// Graded Betti numbers of R/I^Sp.
    Betti,
    /// Cohen–Macaulay and Gorenstein verdicts.
    CmCheck,
    /// Generator counts of the (n,n) and (n,n-1) shapes against Catalan numbers.
    Catalan,
    /// Straighten a two-row tableau into quasi-h-standard ones.
    Straighten,
    /// Whether the block pattern of a set partition lies on the variety.
    ConditionStar,
    /// Socle and e1-multiplication of S/(I^Sp_{(n-3,2)} + I<3>).
    SocleProbe,
    /// Cohen–Macaulay observations across shapes and characteristics.
    Experiment,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Md,
    M2,
}

#[derive(Clone, Debug, clap::Args, Serialize)]
pub struct RunConfig {
    /// Partition, e.g. 3,2,1.
    #[arg(long, global = true)]
    pub shape: Option<String>,
    /// 0 for the rationals, otherwise a prime.
    #[arg(long = "char", global = true, default_value_t = 0)]
    pub characteristic: u64,
    /// Degree bound for component-wise checks.
    #[arg(long = "max-deg", global = true)]
    pub max_degree: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Set partition, e.g. "1,2,3|4,5|6".
    #[arg(long, global = true)]
    pub blocks: Option<String>,
    /// Tableau rows, e.g. "1,3,5/2,4".
    #[arg(long, global = true)]
    pub tableau: Option<String>,
    /// Letters of the squarefree monomial for straightening, e.g. 1,2.
    #[arg(long = "a-letters", global = true)]
    pub a_letters: Option<String>,
    #[arg(long, global = true)]
    pub n: Option<usize>,
    /// Upper size for the experiment runner.
    #[arg(long = "n-max", global = true)]
    pub n_max: Option<usize>,
    /// Characteristics for the experiment runner.
    #[arg(long, global = true)]
    pub primes: Option<String>,
    /// Compute characteristic zero over the rationals instead of two primes.
    #[arg(long, global = true)]
    pub exact: bool,
    /// Record wall-clock time in the report.
    #[arg(long, global = true)]
    #[serde(skip)]
    pub timing: bool,
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::ResourceLimit(_) => 3,
        Error::Internal(_) => 4,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    match commands::run(cli.command, &cli.config) {
        Ok(mut report) => {
            if cli.config.timing {
                report.timing_ms = Some(start.elapsed().as_millis() as u64);
            }
            let text = match cli.config.format {
                Format::Json => report.to_json() + "\n",
                Format::Md => report.to_markdown(),
                Format::M2 => report.to_m2(),
            };
            print!("{text}");
            ExitCode::from(if report.outcome { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Gens => "gens",
            Command::Hilbert => "hilbert",
            Command::RadicalCheck => "radical-check",
            Command::MinimalPrimes => "minimal-primes",
            Command::Purity => "purity",
            Command::Betti => "betti",
            Command::CmCheck => "cm-check",
            Command::Catalan => "catalan",
            Command::Straighten => "straighten",
            Command::ConditionStar => "condition-star",
            Command::SocleProbe => "socle-probe",
            Command::Experiment => "experiment",
        }
    }
}
