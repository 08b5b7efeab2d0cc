// Copyright 2026 The stark-qsde Authors
// SPDX-License-Identifier: Apache-2.0

//! Command-line front end.
//!
//! Every command resolves a flat [`Config`] (file values, then explicit
//! flags, then defaults), runs, and writes `<out>` as CSV plus
//! `<out>.manifest`, which is the resolved config and can be fed back through
//! `--config`.
//!
//! Exit codes: 0 success, 1 usage or config error, 2 tolerance breach,
//! 3 numerical failure.

mod csv;
mod derive;
mod map_params;
mod simulate;
mod sweep;

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use thiserror::Error;

use crate::collision_oracle::CollisionError;
use crate::config::{Config, ConfigError};
use crate::ito_algebra::ItoError;
use crate::lindblad::{LindbladError, StateError};
use crate::physical_params::ParamError;

pub use csv::{Cell, CsvTable, CSV_SCHEMA};
pub use map_params::system_from_config;
pub use sweep::eta_grid;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_TOLERANCE: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Keys every command accepts.
const COMMON_KEYS: &[&str] = &["command", "tool.version", "rng.seed", "output.path"];

#[derive(Debug, Parser)]
#[command(name = "qsde-stark", version, about = "Stark-coupled emitter: Ito algebra, master equation and oracles")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    /// flat config file (a previous manifest works too)
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// CSV output path; the manifest goes to `<out>.manifest`
    #[arg(long)]
    pub out: PathBuf,
    /// RNG seed (only Monte Carlo consumes it)
    #[arg(long)]
    pub seed: Option<u64>,
    /// command tolerance, see the README
    #[arg(long)]
    pub tol: Option<f64>,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Ito-exponential coefficients and master-equation rates for one (chi, eta)
    Derive {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long, allow_hyphen_values = true)]
        chi: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        eta: Option<f64>,
    },
    /// Time series from the closed form, RK4, the collision model and Monte Carlo
    Simulate {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// gamma, delta and S over an eta grid
    Sweep {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long, allow_hyphen_values = true)]
        chi: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        eta_min: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        eta_max: Option<f64>,
        #[arg(long)]
        points: Option<usize>,
    },
    /// (chi, eta) from a level system and resonance data
    MapParams {
        #[command(flatten)]
        common: CommonArgs,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Derive { .. } => "derive",
            Command::Simulate { .. } => "simulate",
            Command::Sweep { .. } => "sweep",
            Command::MapParams { .. } => "map-params",
        }
    }

    pub fn common(&self) -> &CommonArgs {
        match self {
            Command::Derive { common, .. }
            | Command::Simulate { common }
            | Command::Sweep { common, .. }
            | Command::MapParams { common } => common,
        }
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Config(_) | CliError::Io(_) => EXIT_USAGE,
            CliError::Numerical(_) => EXIT_NUMERICAL,
        }
    }
}

impl From<ItoError> for CliError {
    fn from(e: ItoError) -> Self {
        CliError::Numerical(e.to_string())
    }
}

impl From<StateError> for CliError {
    fn from(e: StateError) -> Self {
        CliError::Usage(format!("invalid initial state: {e}"))
    }
}

impl From<LindbladError> for CliError {
    fn from(e: LindbladError) -> Self {
        match e {
            LindbladError::State(s) => s.into(),
            LindbladError::InvalidRates { .. }
            | LindbladError::InvalidTime(_)
            | LindbladError::InvalidSteps => CliError::Usage(e.to_string()),
            _ => CliError::Numerical(e.to_string()),
        }
    }
}

impl From<CollisionError> for CliError {
    fn from(e: CollisionError) -> Self {
        match e {
            CollisionError::Model(m) => m.into(),
            CollisionError::State(s) => s.into(),
            CollisionError::InvalidConfig(_) | CollisionError::StepTooLarge { .. } => {
                CliError::Usage(e.to_string())
            }
            CollisionError::SimulationFailure { .. } => CliError::Numerical(e.to_string()),
        }
    }
}

impl From<ParamError> for CliError {
    fn from(e: ParamError) -> Self {
        match e {
            ParamError::NearResonance { .. } => CliError::Numerical(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

/// Result of one command before anything is written.
#[derive(Debug, Clone)]
pub struct Report {
    pub table: CsvTable,
    /// human-readable lines for stdout
    pub summary: Vec<String>,
    /// one line per violated tolerance
    pub breaches: Vec<String>,
}

/// `<out>.manifest`
pub fn manifest_path(out: &Path) -> PathBuf {
    let mut name = out.as_os_str().to_owned();
    name.push(".manifest");
    PathBuf::from(name)
}

/// Rejects keys outside `exact`, `prefixes` and the common keys.
pub(crate) fn check_keys(
    cfg: &Config,
    command: &str,
    exact: &[&str],
    prefixes: &[&str],
) -> Result<(), CliError> {
    for key in cfg.keys() {
        let known = COMMON_KEYS.contains(&key)
            || exact.contains(&key)
            || prefixes.iter().any(|p| key.starts_with(p));
        if !known {
            return Err(CliError::Usage(format!("unknown key `{key}` for {command}")));
        }
    }
    Ok(())
}

/// Loads the config, applies explicit flags and fills the common keys.
pub fn resolve(command: &Command) -> Result<Config, CliError> {
    let common = command.common();
    let mut cfg = match &common.config {
        Some(path) => Config::load(path)?,
        None => Config::new(),
    };
    if cfg.contains("command") {
        let recorded = cfg.str("command")?;
        if recorded != command.name() {
            return Err(CliError::Usage(format!(
                "config was written for `{recorded}`, not `{}`",
                command.name()
            )));
        }
    }
    let seed = match common.seed {
        Some(seed) => seed,
        None => cfg.u64_or("rng.seed", 0)?,
    };
    cfg.set_u64("rng.seed", seed);
    cfg.set("command", command.name());
    cfg.set("tool.version", TOOL_VERSION);
    cfg.set("output.path", common.out.display().to_string());

    match command {
        Command::Derive { chi, eta, .. } => {
            set_opt(&mut cfg, "model.chi", *chi);
            set_opt(&mut cfg, "model.eta", *eta);
            set_opt(&mut cfg, "tolerance.series", common.tol);
            derive::resolve(&mut cfg)?;
        }
        Command::Simulate { .. } => {
            require_config(common, "simulate")?;
            set_opt(&mut cfg, "tolerance.rk4", common.tol);
            simulate::resolve(&mut cfg)?;
        }
        Command::Sweep {
            chi,
            eta_min,
            eta_max,
            points,
            ..
        } => {
            set_opt(&mut cfg, "model.chi", *chi);
            set_opt(&mut cfg, "sweep.eta_min", *eta_min);
            set_opt(&mut cfg, "sweep.eta_max", *eta_max);
            if let Some(p) = points {
                cfg.set("sweep.points", *p as i64);
            }
            set_opt(&mut cfg, "tolerance.residual", common.tol);
            sweep::resolve(&mut cfg)?;
        }
        Command::MapParams { .. } => {
            require_config(common, "map-params")?;
            set_opt(&mut cfg, "tolerance.hermiticity", common.tol);
            map_params::resolve(&mut cfg)?;
        }
    }
    Ok(cfg)
}

fn set_opt(cfg: &mut Config, key: &str, value: Option<f64>) {
    if let Some(v) = value {
        cfg.set(key, v);
    }
}

fn require_config(common: &CommonArgs, command: &str) -> Result<(), CliError> {
    if common.config.is_none() {
        return Err(CliError::Usage(format!("{command} requires --config")));
    }
    Ok(())
}

/// Runs a resolved config. Pure: nothing is written.
pub fn execute(cfg: &Config) -> Result<Report, CliError> {
    match cfg.str("command")? {
        "derive" => derive::execute(cfg),
        "simulate" => simulate::execute(cfg),
        "sweep" => sweep::execute(cfg),
        "map-params" => map_params::execute(cfg),
        other => Err(CliError::Usage(format!("unknown command `{other}`"))),
    }
}

fn write_outputs(out: &Path, report: &Report, cfg: &Config) -> Result<(), CliError> {
    let io = |path: &Path, e: std::io::Error| CliError::Io(format!("{}: {e}", path.display()));
    std::fs::write(out, report.table.render()).map_err(|e| io(out, e))?;
    let manifest = manifest_path(out);
    std::fs::write(&manifest, cfg.to_text()).map_err(|e| io(&manifest, e))?;
    Ok(())
}

/// Full CLI entry point; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match run_command(&cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn run_command(command: &Command) -> Result<i32, CliError> {
    let cfg = resolve(command)?;
    let report = execute(&cfg)?;
    write_outputs(&command.common().out, &report, &cfg)?;
    for line in &report.summary {
        println!("{line}");
    }
    if report.breaches.is_empty() {
        Ok(EXIT_OK)
    } else {
        eprintln!("tolerance breach:");
        for line in &report.breaches {
            eprintln!("  {line}");
        }
        Ok(EXIT_TOLERANCE)
    }
}
