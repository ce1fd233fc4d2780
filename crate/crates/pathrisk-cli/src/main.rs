//! `pathrisk`: drawdown and duration analytics over CSV return series.

mod commands;
mod render;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::{OutputFormat, TransformArg, WindowArg};
use pathrisk::series::{parse_returns_csv, ReturnSeries};

#[derive(Parser)]
#[command(
    name = "pathrisk",
    version,
    about = "Path-dependent risk analytics: drawdown, underwater duration, temporal risk measures, and AR(1) experiments"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Emit the cumulative log path with running max, drawdown, peak time,
    /// and duration per period.
    Paths {
        /// Input CSV with header date,return.
        #[arg(short, long)]
        input: PathBuf,
        /// Output file (stdout when omitted).
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t)]
        format: OutputFormat,
        /// Report drawdowns as fractional drops 1 - exp(-D) instead of log units.
        #[arg(long)]
        percent: bool,
    },
    /// Compute the risk report: volatility, ES, CED, and duration statistics.
    Risk {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t)]
        format: OutputFormat,
        /// Confidence level for ES, CED, and the duration tail statistics.
        #[arg(long, default_value_t = 0.9)]
        alpha: f64,
        /// Rolling window length in periods, or 'full' for whole-history
        /// per-step samples.
        #[arg(long, default_value = "180")]
        window: WindowArg,
        /// Periods between consecutive window starts.
        #[arg(long, default_value_t = 1)]
        stride: usize,
        #[arg(long)]
        percent: bool,
    },
    /// Locate the maximum-drawdown episode: peak, bottom, recovery, duration.
    Episode {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t)]
        format: OutputFormat,
        #[arg(long)]
        percent: bool,
    },
    /// First time the underwater duration reaches the threshold.
    Lst {
        #[arg(short, long)]
        input: PathBuf,
        /// Liquidation threshold in periods (>= 1).
        #[arg(long)]
        threshold: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t)]
        format: OutputFormat,
    },
    /// Check the temporal-transformation axioms on built-in fixtures.
    Axioms {
        /// Transform under test; max-drawdown is the deliberate counterexample.
        #[arg(long, value_enum, default_value_t)]
        transform: TransformArg,
        /// Threshold used when the transform is the liquidation stopping time.
        #[arg(long, default_value_t = 5)]
        threshold: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t)]
        format: OutputFormat,
    },
    /// Simulate an AR(1) return series (innovation sd 0.1) to CSV.
    Simulate {
        /// Autoregressive parameter, |kappa| < 1.
        #[arg(long)]
        kappa: f64,
        /// Number of returns.
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t)]
        format: OutputFormat,
    },
    /// Fit the AR(1) parameter to a return series.
    Fit {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t)]
        format: OutputFormat,
    },
    /// Sweep kappa: simulate per value and tabulate the four risk measures.
    KappaTable {
        /// Comma-separated kappa values.
        #[arg(long, value_delimiter = ',', required = true)]
        kappa: Vec<f64>,
        #[arg(long, default_value_t = 10_000)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 0.9)]
        alpha: f64,
        /// Rolling window length for CED and CE_delta.
        #[arg(long, default_value_t = 180)]
        window: usize,
        #[arg(long, default_value_t = 1)]
        stride: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t)]
        format: OutputFormat,
    },
    /// Run the serial-correlation experiment: correlate rolling kappa
    /// estimates with the four rolling risk measures on a regime-switching
    /// simulation.
    KappaCorr {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 0.9)]
        alpha: f64,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t)]
        format: OutputFormat,
    },
}

fn read_returns(path: &PathBuf) -> Result<ReturnSeries, String> {
    let text =
        fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    parse_returns_csv(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn write_output(output: Option<PathBuf>, text: &str) -> Result<(), String> {
    match output {
        Some(path) => {
            fs::write(&path, text).map_err(|e| format!("cannot write {}: {e}", path.display()))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<(), String> {
    match cli.command {
        Command::Paths {
            input,
            output,
            format,
            percent,
        } => {
            let returns = read_returns(&input)?;
            write_output(output, &commands::paths(&returns, format, percent))
        }
        Command::Risk {
            input,
            output,
            format,
            alpha,
            window,
            stride,
            percent,
        } => {
            let returns = read_returns(&input)?;
            let text = commands::risk(&returns, alpha, window, stride, format, percent)
                .map_err(|e| e.to_string())?;
            write_output(output, &text)
        }
        Command::Episode {
            input,
            output,
            format,
            percent,
        } => {
            let returns = read_returns(&input)?;
            let text = commands::episode(&returns, format, percent).map_err(|e| e.to_string())?;
            write_output(output, &text)
        }
        Command::Lst {
            input,
            threshold,
            output,
            format,
        } => {
            let returns = read_returns(&input)?;
            let text = commands::lst(&returns, threshold, format).map_err(|e| e.to_string())?;
            write_output(output, &text)
        }
        Command::Axioms {
            transform,
            threshold,
            output,
            format,
        } => {
            let text = commands::axioms(transform, threshold, format).map_err(|e| e.to_string())?;
            write_output(output, &text)
        }
        Command::Simulate {
            kappa,
            n,
            seed,
            output,
            format,
        } => {
            let text = commands::simulate(kappa, n, seed, format).map_err(|e| e.to_string())?;
            write_output(output, &text)
        }
        Command::Fit {
            input,
            output,
            format,
        } => {
            let returns = read_returns(&input)?;
            let text = commands::fit(&returns, format).map_err(|e| e.to_string())?;
            write_output(output, &text)
        }
        Command::KappaTable {
            kappa,
            n,
            seed,
            alpha,
            window,
            stride,
            output,
            format,
        } => {
            let text = commands::kappa_table_cmd(kappa, n, seed, alpha, window, stride, format)
                .map_err(|e| e.to_string())?;
            write_output(output, &text)
        }
        Command::KappaCorr {
            seed,
            alpha,
            output,
            format,
        } => {
            let text = commands::kappa_corr(seed, alpha, format).map_err(|e| e.to_string())?;
            write_output(output, &text)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::FAILURE
        }
    }
}
