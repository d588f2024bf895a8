//! `zeno`: catch-up times, step tables and float audits for convergent event
//! sequences, with exact rational output.
//!
//! Exit codes: 0 success, 2 invalid input, 3 divergent (no limit exists),
//! 4 internal cross-check failure.

mod commands;
mod output;

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use zeno_core::{ParseRationalError, Rational, MAX_STEPS};

#[derive(Debug)]
pub enum CliError {
    Invalid(String),
    Divergent(String),
    Internal(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Invalid(_) => 2,
            CliError::Divergent(_) => 3,
            CliError::Internal(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Invalid(m) | CliError::Divergent(m) | CliError::Internal(m) => m,
        }
    }
}

impl From<zeno_core::Error> for CliError {
    fn from(e: zeno_core::Error) -> Self {
        if e.is_divergent() {
            CliError::Divergent(e.to_string())
        } else {
            CliError::Invalid(e.to_string())
        }
    }
}

fn rational(s: &str) -> Result<Rational, ParseRationalError> {
    s.parse()
}

#[derive(Parser)]
#[command(name = "zeno", version, about = "Exact evaluation of convergent event sequences")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct RaceArgs {
    /// Tortoise head start
    #[arg(long, value_parser = rational, allow_hyphen_values = true)]
    pub x0: Rational,
    /// Achilles' speed
    #[arg(long, value_parser = rational, allow_hyphen_values = true)]
    pub sa: Rational,
    /// Tortoise speed
    #[arg(long, value_parser = rational, allow_hyphen_values = true)]
    pub st: Rational,
}

#[derive(Args, Debug, Clone, Copy)]
pub struct Digits {
    /// Fractional digits in decimal approximations
    #[arg(long, default_value_t = 6)]
    pub digits: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableFormat {
    Table,
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AuditFormat {
    Csv,
    Json,
}

const STEP_RANGE: std::ops::RangeInclusive<i64> = 1..=MAX_STEPS as i64;

#[derive(Subcommand)]
enum Command {
    /// Catch-up time and distance
    Catchup {
        #[command(flatten)]
        race: RaceArgs,
        /// Emit the JSON envelope
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        digits: Digits,
    },
    /// Table of the first N catch-up steps
    Steps {
        #[command(flatten)]
        race: RaceArgs,
        #[arg(long, value_parser = clap::value_parser!(u32).range(STEP_RANGE))]
        n: u32,
        #[arg(long, value_enum, default_value_t = TableFormat::Table)]
        format: TableFormat,
        #[command(flatten)]
        digits: Digits,
    },
    /// Fewest steps leaving less than EPS until catch-up
    Within {
        #[command(flatten)]
        race: RaceArgs,
        #[arg(long, value_parser = rational, allow_hyphen_values = true)]
        eps: Rational,
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        digits: Digits,
    },
    /// Event times and accumulation point of a geometric event process
    Process {
        /// Duration of the first interval
        #[arg(long, value_parser = rational, allow_hyphen_values = true)]
        first: Rational,
        /// Ratio between consecutive intervals
        #[arg(long, value_parser = rational, allow_hyphen_values = true)]
        ratio: Rational,
        /// Print event times 0..=K; without it only the accumulation point is computed
        #[arg(long, value_parser = clap::value_parser!(u32).range(0..MAX_STEPS as i64))]
        k: Option<u32>,
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        digits: Digits,
    },
    /// Runner covering half of the remaining distance, over and over
    Dichotomy {
        #[arg(long, value_parser = rational, allow_hyphen_values = true)]
        length: Rational,
        #[arg(long, value_parser = rational, allow_hyphen_values = true)]
        speed: Rational,
        #[arg(long, value_parser = clap::value_parser!(u32).range(STEP_RANGE))]
        n: u32,
        #[arg(long, value_enum, default_value_t = TableFormat::Table)]
        format: TableFormat,
        #[command(flatten)]
        digits: Digits,
    },
    /// Rest time of a bouncing ball with geometrically shrinking flights
    Bounce {
        /// Duration of the first flight
        #[arg(long, value_parser = rational, allow_hyphen_values = true)]
        first: Rational,
        /// Ratio of successive flight times (the coefficient of restitution)
        #[arg(long, value_parser = rational, allow_hyphen_values = true)]
        ratio: Rational,
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        digits: Digits,
    },
    /// Binary64 partial sums audited against the exact value
    Floaterr {
        #[command(flatten)]
        race: RaceArgs,
        #[arg(long, value_parser = clap::value_parser!(u32).range(STEP_RANGE))]
        nmax: u32,
        #[arg(long, value_enum, default_value_t = AuditFormat::Csv)]
        format: AuditFormat,
    },
}

fn run(command: Command) -> Result<String, CliError> {
    match command {
        Command::Catchup { race, json, digits } => commands::catchup(&race, json, digits.digits),
        Command::Steps {
            race,
            n,
            format,
            digits,
        } => commands::steps(&race, n, format, digits.digits),
        Command::Within {
            race,
            eps,
            json,
            digits,
        } => commands::within(&race, &eps, json, digits.digits),
        Command::Process {
            first,
            ratio,
            k,
            json,
            digits,
        } => commands::process(&first, &ratio, k, json, digits.digits),
        Command::Dichotomy {
            length,
            speed,
            n,
            format,
            digits,
        } => commands::dichotomy(&length, &speed, n, format, digits.digits),
        Command::Bounce {
            first,
            ratio,
            json,
            digits,
        } => commands::bounce(&first, &ratio, json, digits.digits),
        Command::Floaterr { race, nmax, format } => commands::floaterr(&race, nmax, format),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        // help and version exit 0, usage errors exit 2
        Err(e) => e.exit(),
    };
    match run(cli.command) {
        Ok(text) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(4);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.exit_code())
        }
    }
}
