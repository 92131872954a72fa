//! `spinlyap <command>`: batch runs that write CSV or JSON tables plus a
//! `manifest.json` holding the resolved configuration.
//!
//! Settings come from built-in defaults, then `--config FILE` (TOML or JSON,
//! a previous manifest works too), then flags. Exit status: 0 success,
//! 1 numerical invariant violated, 2 configuration or usage error, 3 I/O.

pub mod commands;
pub mod config;
pub mod output;

use std::ffi::OsString;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

pub use commands::{execute, label};
pub use config::{CommandKind, ConfigFile, FigureId, Format, Overrides, RunConfig};
pub use output::{write_run, Cell, Table};

use crate::{Error, Result};

#[derive(Debug, Parser)]
#[command(
    name = "spinlyap",
    version,
    about = "Instability-enhanced phase sensing with quadratic and quartic spin twisting",
    after_help = "Comma-separated --h/--J/--K/--N lists are zipped into parameter sets; single values broadcast.\n\
                  The output directory defaults to $SPINLYAP_OUT, then ./spinlyap-out."
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Cmd,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Subcommand)]
pub enum Cmd {
    /// Lyapunov exponent and region over an (h/J, K/J) grid
    PhaseMap,
    /// Effective potential V(Q) = H_cl(Q, 0)
    Potential,
    /// Classical fixed points and their stability
    FixedPoints,
    /// Region, hyperbolic point and Lyapunov exponent per parameter set
    Lyapunov,
    /// ln G²(t) from the exact anti-squeezing
    Gain,
    /// Echo infidelity 1 − F against the kick δφ
    Infidelity,
    /// Husimi snapshots on the phase-space disk, with the separatrix
    Husimi,
    /// Analytic covariance-matrix anti-squeezing and local expansion
    Covariance,
    /// LMG and quartic parameter sets sharing one Lyapunov exponent
    MatchedLambda,
    /// Straight-line fit of the maximal-exponent ridge in region II
    FitMaxline,
    /// All data series behind one figure
    Figure {
        #[arg(value_enum)]
        id: FigureId,
    },
}

impl Cmd {
    fn kind(&self) -> (CommandKind, Option<FigureId>) {
        let k = match self {
            Cmd::PhaseMap => CommandKind::PhaseMap,
            Cmd::Potential => CommandKind::Potential,
            Cmd::FixedPoints => CommandKind::FixedPoints,
            Cmd::Lyapunov => CommandKind::Lyapunov,
            Cmd::Gain => CommandKind::Gain,
            Cmd::Infidelity => CommandKind::Infidelity,
            Cmd::Husimi => CommandKind::Husimi,
            Cmd::Covariance => CommandKind::Covariance,
            Cmd::MatchedLambda => CommandKind::MatchedLambda,
            Cmd::FitMaxline => CommandKind::FitMaxline,
            Cmd::Figure { id } => return (CommandKind::Figure, Some(*id)),
        };
        (k, None)
    }
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    /// TOML or JSON configuration file, or a previous manifest.json
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,
    /// Transverse field h
    #[arg(
        long,
        global = true,
        value_delimiter = ',',
        allow_negative_numbers = true,
        value_name = "X"
    )]
    pub h: Vec<f64>,
    /// Two-body coupling J
    #[arg(
        long = "J",
        global = true,
        value_delimiter = ',',
        allow_negative_numbers = true,
        value_name = "X"
    )]
    pub j: Vec<f64>,
    /// Four-body coupling K
    #[arg(
        long = "K",
        global = true,
        value_delimiter = ',',
        allow_negative_numbers = true,
        value_name = "X"
    )]
    pub k: Vec<f64>,
    /// Number of spins N
    #[arg(long = "N", global = true, value_delimiter = ',', value_name = "INT")]
    pub n: Vec<usize>,
    /// End of the time grid, in units of 1/J
    #[arg(long, global = true, value_name = "X")]
    pub t_max: Option<f64>,
    /// Number of time samples including t = 0
    #[arg(long, global = true, value_name = "INT")]
    pub t_steps: Option<usize>,
    /// Fix the readout angle α (rad) instead of optimizing it
    #[arg(long, global = true, allow_negative_numbers = true, value_name = "X")]
    pub alpha: Option<f64>,
    /// Output directory
    #[arg(long, global = true, value_name = "DIR")]
    pub out: Option<PathBuf>,
    /// Table format
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Worker threads (0 = one per core)
    #[arg(long, global = true, value_name = "INT")]
    pub workers: Option<usize>,
}

impl CommonArgs {
    fn overrides(&self) -> Overrides {
        Overrides {
            h: self.h.clone(),
            j: self.j.clone(),
            k: self.k.clone(),
            n: self.n.clone(),
            t_max: self.t_max,
            t_steps: self.t_steps,
            alpha: self.alpha,
            out: self.out.clone(),
            format: self.format,
            workers: self.workers,
        }
    }
}

/// Process exit status for a failed run.
pub fn exit_code(err: &Error) -> u8 {
    match err {
        Error::Io(_) => 3,
        Error::Config(_)
        | Error::InvalidParameter { .. }
        | Error::InvalidDimension(_)
        | Error::NoHyperbolicPoint { .. }
        | Error::NotHyperbolic(_)
        | Error::Unreachable(_)
        | Error::DegenerateCouplings => 2,
        Error::Numerical(_)
        | Error::NotHermitian(_)
        | Error::DimensionMismatch { .. }
        | Error::OutsideDisk { .. }
        | Error::InsufficientData(_) => 1,
    }
}

pub fn resolve(cli: &Cli) -> Result<RunConfig> {
    let file = match &cli.common.config {
        Some(path) => ConfigFile::load(path).map_err(|e| match e {
            Error::Io(io) => Error::Config(format!("cannot read {}: {io}", path.display())),
            other => other,
        })?,
        None => ConfigFile::default(),
    };
    let (kind, figure) = cli.command.kind();
    RunConfig::resolve(kind, figure, file, &cli.common.overrides())
}

/// Executes `config` on a bounded worker pool and writes its files.
pub fn run(config: &RunConfig) -> Result<Vec<PathBuf>> {
    // fail on an unusable output directory before any work
    std::fs::create_dir_all(&config.output)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.workers)
        .build()
        .map_err(|e| Error::Config(format!("`workers`: {e}")))?;
    let tables = pool.install(|| execute(config))?;
    write_run(config, &tables)
}

/// Parses `args`, runs, prints the written paths and maps the outcome to an
/// exit status.
pub fn main_with_args<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match resolve(&cli).and_then(|c| run(&c)) {
        Ok(paths) => {
            for p in paths {
                println!("{}", p.display());
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("spinlyap: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
