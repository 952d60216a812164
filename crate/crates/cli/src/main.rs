use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use smoothq_cli::commands::{self, Level, DEFAULT_TAUS};
use smoothq_cli::records::{write_rows, Format};
use smoothq_cli::{CliError, DistSpec};

#[derive(Parser)]
#[command(name = "smoothq", version, about = "Smoothed quantile estimation and efficiency tables")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output encoding.
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv, global = true)]
    format: OutputFormat,

    /// Write to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Csv,
    Json,
}

#[derive(Args)]
struct LevelArgs {
    /// Quantile level; z is solved from (tau, h).
    #[arg(long, conflicts_with = "z")]
    tau: Option<f64>,
    /// Raw location parameter.
    #[arg(long, allow_negative_numbers = true)]
    z: Option<f64>,
}

impl LevelArgs {
    fn level(&self) -> Result<Level, CliError> {
        match (self.tau, self.z) {
            (Some(tau), None) => Ok(Level::Tau(tau)),
            (None, Some(z)) => Ok(Level::Z(z)),
            _ => Err(CliError::Usage("exactly one of --tau or --z is required".into())),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Compute q̂(z, h) for a sample file (one number per line).
    Estimate {
        input: PathBuf,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        z: f64,
        #[arg(long, default_value_t = 0.0)]
        h: f64,
    },
    /// Efficiency table: v(τ,0), h*(τ), v(τ,h*) and the ratio per τ.
    Table {
        #[arg(long)]
        dist: DistSpec,
        #[arg(long, value_delimiter = ',', default_values_t = DEFAULT_TAUS)]
        tau: Vec<f64>,
    },
    /// Efficiency ratio over an evenly spaced τ grid.
    Sweep {
        #[arg(long)]
        dist: DistSpec,
        #[arg(default_value_t = 0.05)]
        start: f64,
        #[arg(default_value_t = 0.95)]
        end: f64,
        #[arg(default_value_t = 0.05)]
        step: f64,
    },
    /// Monte Carlo check of the asymptotic variance.
    Simulate {
        #[arg(long)]
        dist: DistSpec,
        #[command(flatten)]
        level: LevelArgs,
        #[arg(long, default_value_t = 0.0)]
        h: f64,
        #[arg(long, default_value_t = 2000)]
        n: usize,
        #[arg(long, default_value_t = 2000)]
        reps: usize,
        #[arg(long)]
        seed: u64,
    },
    /// Population minimizer q(z, h) and its asymptotic variance.
    Population {
        #[arg(long)]
        dist: DistSpec,
        #[command(flatten)]
        level: LevelArgs,
        #[arg(long, default_value_t = 0.0)]
        h: f64,
    },
    /// v(τ, h), its derivative and the variance coefficients.
    Variance {
        #[arg(long)]
        dist: DistSpec,
        #[arg(long)]
        tau: f64,
        #[arg(long, value_delimiter = ',', default_values_t = [0.0])]
        h: Vec<f64>,
    },
}

fn emit<T: Serialize>(rows: &[T], format: Format, out: Option<&PathBuf>) -> Result<(), CliError> {
    match out {
        Some(path) => {
            let file = File::create(path).map_err(|source| CliError::Io {
                path: path.clone(),
                source,
            })?;
            let mut writer = BufWriter::new(file);
            write_rows(rows, format, &mut writer)?;
            writer.flush()?;
        }
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            write_rows(rows, format, &mut lock)?;
            lock.flush()?;
        }
    }
    Ok(())
}

fn execute(cli: Cli) -> Result<(), CliError> {
    let format = match cli.format {
        OutputFormat::Csv => Format::Csv,
        OutputFormat::Json => Format::Json,
    };
    let out = cli.out.as_ref();
    match cli.command {
        Command::Estimate { input, z, h } => {
            emit(&[commands::estimate_file(&input, z, h)?], format, out)
        }
        Command::Table { dist, tau } => emit(&commands::table(&dist, &tau)?, format, out),
        Command::Sweep { dist, start, end, step } => {
            emit(&commands::sweep(&dist, start, end, step)?, format, out)
        }
        Command::Simulate { dist, level, h, n, reps, seed } => {
            let row = commands::simulate(&dist, level.level()?, h, n, reps, seed)?;
            emit(&[row], format, out)
        }
        Command::Population { dist, level, h } => {
            emit(&[commands::population(&dist, level.level()?, h)?], format, out)
        }
        Command::Variance { dist, tau, h } => emit(&commands::variance(&dist, tau, &h)?, format, out),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
