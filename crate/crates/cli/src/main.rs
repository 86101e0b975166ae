//! `vdw`: command-line access to the crossover toolkit.
//!
//! Exit status: 0 success, 2 configuration or usage error, 3 accuracy error,
//! 4 internal-consistency error (including a failed kernel self-test).

mod commands;
mod config;
mod error;
mod table;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use vdw_core::action::PathConfig;

use crate::config::{OutputFormat, RunConfig};
use crate::error::CliError;
use crate::table::Table;

/// Thread count for the parallel sections.
const THREADS_ENV: &str = "VDW_THREADS";

#[derive(Debug, Parser)]
#[command(name = "vdw", version, about = "Van der Waals to Casimir-Polder crossover for two hydrogen atoms")]
struct Cli {
    /// TOML configuration file.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output format; overrides the configuration.
    #[arg(long, global = true, value_enum)]
    format: Option<OutputFormat>,
    /// Output file; overrides the configuration. Standard output by default.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    /// Smearing profile name; overrides the configuration.
    #[arg(long, global = true)]
    profile: Option<String>,
    /// Seed for every Monte Carlo computation; overrides the configuration.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, clap::Args)]
struct PathArgs {
    #[arg(long)]
    tau: Option<f64>,
    /// Step on the rescaled horizon tau/alpha^2.
    #[arg(long)]
    dt: Option<f64>,
    #[arg(long)]
    paths: Option<usize>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Pseudostate excitation energies and dipole strengths.
    Spectrum,
    /// f(u) and alpha(iu) on a grid.
    Polarizability {
        /// `a,b,c`, `lin:start:stop:points` or `log:start:stop:points`.
        #[arg(long, default_value = "log:1e-2:1e2:41")]
        u_grid: String,
    },
    /// alpha_hy, a_VW (both evaluations), a_CP and R*.
    Coefficients,
    /// h_co(R) on a logarithmic R grid.
    Crossover {
        #[arg(long, default_value_t = 1e-2)]
        r_min: f64,
        #[arg(long, default_value_t = 1e3)]
        r_max: f64,
        #[arg(long, default_value_t = 51)]
        points: usize,
    },
    /// Leading-order energy of the regime selected by gamma.
    Regime {
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        gamma: f64,
        #[arg(long)]
        r: f64,
    },
    /// Self-energy constant a0 for both two-photon exponents.
    A0 {
        /// Add 6D Monte Carlo rows with this many samples.
        #[arg(long)]
        mc_samples: Option<usize>,
    },
    /// Moments of the path action at one alpha.
    McAction {
        #[arg(long)]
        alpha: Option<f64>,
        #[command(flatten)]
        path: PathArgs,
    },
    /// Path-action variance at several alpha, extrapolated to alpha -> 0.
    McExtrapolate {
        #[arg(long, value_delimiter = ',', default_value = "0.4,0.3,0.2")]
        alphas: Vec<f64>,
        #[command(flatten)]
        path: PathArgs,
    },
    /// Kernel checks against brute-force oracles.
    Kernels {
        #[arg(long)]
        selftest: bool,
    },
    /// Read a CSV table written by this tool and write it again.
    Reformat {
        /// Input file, or `-` for standard input.
        input: PathBuf,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Spectrum => "spectrum",
            Command::Polarizability { .. } => "polarizability",
            Command::Coefficients => "coefficients",
            Command::Crossover { .. } => "crossover",
            Command::Regime { .. } => "regime",
            Command::A0 { .. } => "a0",
            Command::McAction { .. } => "mc-action",
            Command::McExtrapolate { .. } => "mc-extrapolate",
            Command::Kernels { .. } => "kernels",
            Command::Reformat { .. } => "reformat",
        }
    }
}

fn path_config(config: &RunConfig, alpha: Option<f64>, args: &PathArgs) -> PathConfig {
    let mut c = config.path.config();
    c.alpha = alpha.unwrap_or(c.alpha);
    c.tau = args.tau.unwrap_or(c.tau);
    c.dt = args.dt.unwrap_or(c.dt);
    c.paths = args.paths.unwrap_or(c.paths);
    c
}

fn read_input(path: &PathBuf) -> Result<String, CliError> {
    if path.as_os_str() == "-" {
        std::io::read_to_string(std::io::stdin()).map_err(|e| CliError::Io(e.to_string()))
    } else {
        std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
    }
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(value) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let n: usize = value
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::Config(format!("{THREADS_ENV} must be a positive integer, got '{value}'")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Config(e.to_string()))
}

fn run(cli: Cli) -> Result<Option<CliError>, CliError> {
    configure_threads()?;
    let mut config = match &cli.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    if let Some(p) = &cli.profile {
        config.profile = p.clone();
        config.validate()?;
    }
    if let Some(seed) = cli.seed {
        config.path.seed = seed;
    }
    let seed = config.path.seed;
    let outcome = match &cli.command {
        Command::Spectrum => commands::spectrum_table(&config)?,
        Command::Polarizability { u_grid } => commands::polarizability_table(&config, &commands::parse_grid(u_grid)?)?,
        Command::Coefficients => commands::coefficients_table(&config)?,
        Command::Crossover { r_min, r_max, points } => commands::crossover_table(&config, *r_min, *r_max, *points)?,
        Command::Regime { alpha, gamma, r } => commands::regime_table(&config, *alpha, *gamma, *r)?,
        Command::A0 { mc_samples } => commands::a0_table(&config, *mc_samples, seed)?,
        Command::McAction { alpha, path } => commands::mc_action_table(&config, &path_config(&config, *alpha, path))?,
        Command::McExtrapolate { alphas, path } => {
            commands::mc_extrapolate_table(&config, &path_config(&config, None, path), alphas)?
        }
        Command::Kernels { selftest } => {
            if !selftest {
                return Err(CliError::Usage("kernels: pass --selftest to run the oracle comparisons".into()));
            }
            commands::selftest_table(&config, seed)?
        }
        Command::Reformat { input } => Table::from_csv(&read_input(input)?)?.into(),
    };
    let format = cli.format.unwrap_or(config.output.format);
    let text = match format {
        OutputFormat::Csv => outcome.table.to_csv()?,
        OutputFormat::Json => outcome.table.to_json(cli.command.name())?,
    };
    match cli.output.as_ref().or(config.output.path.as_ref()) {
        Some(path) => std::fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?,
        None => std::io::stdout().write_all(text.as_bytes()).map_err(|e| CliError::Io(e.to_string()))?,
    }
    Ok(outcome.failure)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(None) => ExitCode::SUCCESS,
        Ok(Some(failure)) | Err(failure) => {
            eprintln!("vdw: {failure}");
            ExitCode::from(failure.exit_code())
        }
    }
}
