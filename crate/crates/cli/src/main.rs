//! `gravflight`: flight times of particles thrown against gravity, as CSV or
//! JSON tables.

mod commands;
mod config;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gravflight::exec::ExecMode;
use gravflight::model::ModelError;
use gravflight::report::ReportError;
use gravflight::stationary::StationaryError;
use gravflight::wavepacket::{ReturnCondition, WavepacketError};
use thiserror::Error;

use commands::{MassFactors, ReturnArg, Settings};
use output::Format;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config: {0}")]
    Config(String),
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Stationary(#[from] StationaryError),
    #[error(transparent)]
    Wavepacket(#[from] WavepacketError),
    #[error(transparent)]
    Report(#[from] ReportError),
    #[error("writing {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
}

#[derive(Debug, Parser)]
#[command(name = "gravflight", version, about = "Classical and quantum flight times under uniform gravity")]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

/// Every value may also come from a `key = value` settings file; flags win.
#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Settings file of `key = value` lines
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Write output here instead of stdout
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Particle name looked up in the catalog [default: neutron]
    #[arg(long, global = true)]
    pub particle: Option<String>,
    /// JSON particle catalog replacing the built-in one
    #[arg(long, global = true)]
    pub catalog: Option<PathBuf>,
    /// Mass in kg, overriding the catalog
    #[arg(long = "mass-kg", global = true, allow_negative_numbers = true)]
    pub mass_kg: Option<f64>,
    /// Gravitational acceleration, m/s^2
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub g: Option<f64>,
    /// Launch height, m
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub zi: Option<f64>,
    /// Classical turning point, m
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub zcap: Option<f64>,
    /// Launch speed, m/s [default: 1 when --zcap is absent]
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub vi: Option<f64>,
    /// Wavepacket width, m
    #[arg(long = "width-d", global = true)]
    pub width_d: Option<f64>,
    #[arg(long = "beta-min", global = true)]
    pub beta_min: Option<f64>,
    #[arg(long = "beta-max", global = true)]
    pub beta_max: Option<f64>,
    #[arg(long, global = true)]
    pub points: Option<usize>,
    /// Relative tolerance for quadrature and verification
    #[arg(long, global = true)]
    pub tol: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TableKind {
    #[value(name = "I", alias = "i", alias = "1")]
    One,
    #[value(name = "II", alias = "ii", alias = "2")]
    Two,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Classical flight time and the characteristic quantum scales
    Cst,
    /// Gaussian wavepacket flight time, Bohmian and Copenhagen
    QstWavepacket {
        /// Level whose recrossing ends the numeric return: value|height
        #[arg(long = "return-condition")]
        return_condition: Option<ReturnArg>,
    },
    /// Stationary-state segment times and their total
    QstStationary {
        /// Also evaluate each segment by quadrature
        #[arg(long)]
        quadrature: bool,
        /// Also evaluate the dwell time in the barrier
        #[arg(long)]
        dwell: bool,
    },
    /// Figure data: total time against classical time, per mass variant
    Sweep {
        /// 2 for QST/T_q, 3 for QST/CST
        #[arg(long)]
        figure: Option<u8>,
        /// Comma-separated mass multiples [default: 1,10,0.1]
        #[arg(long = "mass-factors")]
        mass_factors: Option<MassFactors>,
        #[arg(long)]
        sequential: bool,
    },
    /// Wavepacket comparison (I) or collision times of electron and neutron (II)
    Table {
        #[arg(value_enum)]
        which: TableKind,
    },
    /// Run every cross-check; exits 2 on any failure
    Verify {
        #[arg(long)]
        sequential: bool,
    },
}

fn exec_mode(sequential: bool) -> ExecMode {
    if sequential {
        ExecMode::Sequential
    } else {
        ExecMode::Parallel
    }
}

fn run(cli: Cli) -> Result<bool, CliError> {
    let s = Settings::resolve(&cli.global)?;
    let (table, ok) = match cli.command {
        Command::Cst => (commands::cmd_cst(&s)?, true),
        Command::QstWavepacket { return_condition } => {
            let cond = s.config.pick(return_condition, "return-condition")?.map_or(ReturnCondition::default(), |r| r.0);
            (commands::cmd_qst_wavepacket(&s, cond, "qst-wavepacket")?, true)
        }
        Command::QstStationary { quadrature, dwell } => (commands::cmd_qst_stationary(&s, quadrature, dwell)?, true),
        Command::Sweep { figure, mass_factors, sequential } => {
            let Some(figure) = s.config.pick(figure, "figure")? else {
                return Err(CliError::Invalid("sweep needs --figure 2 or --figure 3".into()));
            };
            let factors = s.config.pick(mass_factors, "mass-factors")?;
            (commands::cmd_sweep(&s, figure, factors, exec_mode(sequential))?, true)
        }
        Command::Table { which: TableKind::One } => {
            (commands::cmd_qst_wavepacket(&s, ReturnCondition::default(), "table I")?, true)
        }
        Command::Table { which: TableKind::Two } => (commands::cmd_table_two(&s)?, true),
        Command::Verify { sequential } => commands::cmd_verify(&s, exec_mode(sequential))?,
    };
    let text = table.render(s.format);
    match &s.out {
        Some(path) => std::fs::write(path, text).map_err(|source| CliError::Io { path: path.clone(), source })?,
        None => print!("{text}"),
    }
    Ok(ok)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("verification failed");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
