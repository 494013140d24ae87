//! `tomo` command-line front end.

mod commands;
mod config;
mod output;
mod report;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::error::{Error, Result};

pub use commands::{biphoton_slice, selftest, talbot_density, talbot_sweep, BiphotonOutcome, SWEEP_INDICATORS};
pub use config::{parse_config_text, read_config_file, RunConfig, KNOWN_KEYS};
pub use output::{format_sci, parse_float_format, CsvSink};
pub use report::{CheckResult, EntanglementReport, SelftestSummary};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_NUMERICAL: i32 = 2;

pub const THREADS_ENV: &str = "TOMO_THREADS";

#[derive(Debug, Parser)]
#[command(name = "tomo", version, about = "Tomographic entanglement indicators")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    /// Flat `key = value` configuration file.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Output directory.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Worker threads (overrides TOMO_THREADS).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Also compute the Fourier-oracle slices.
    #[arg(long, global = true)]
    pub oracle: bool,
    /// Slit counts, comma-separated.
    #[arg(long = "D", global = true, value_delimiter = ',')]
    pub slits: Option<Vec<usize>>,
    /// Correlations, comma-separated.
    #[arg(long = "R", global = true, value_delimiter = ',')]
    pub correlations: Option<Vec<f64>>,
    /// Window half-width in seconds.
    #[arg(long = "window-T", global = true)]
    pub window_t: Option<f64>,
    #[arg(long = "n-grid", global = true)]
    pub n_grid: Option<usize>,
    #[arg(long = "n-teeth", global = true)]
    pub n_teeth: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    #[command(subcommand)]
    Talbot(TalbotCommand),
    #[command(subcommand)]
    Biphoton(BiphotonCommand),
    /// Run the invariant suite and print a JSON summary.
    Selftest,
}

#[derive(Debug, Subcommand)]
pub enum TalbotCommand {
    /// Indicators over a grid of D and R.
    Sweep,
    /// Reduced density matrix and outcome table for one (D, R).
    Density,
}

#[derive(Debug, Subcommand)]
pub enum BiphotonCommand {
    /// Time-time slices of both comb states.
    Slice,
}

/// Resolves defaults, then the config file, then flags.
pub fn resolve_config(cli: &Cli) -> Result<RunConfig> {
    let mut cfg = RunConfig::default();
    if matches!(cli.command, Command::Talbot(TalbotCommand::Density)) {
        cfg.slits = vec![10];
        cfg.correlations = vec![crate::talbot::NEAR_THRESHOLD_CORRELATION];
    }
    if let Some(path) = &cli.common.config {
        cfg.apply(&read_config_file(path)?)?;
    }
    let a = &cli.common;
    if let Some(v) = &a.out {
        cfg.out = v.clone();
    }
    if let Some(v) = &a.slits {
        cfg.slits = v.clone();
    }
    if let Some(v) = &a.correlations {
        cfg.correlations = v.clone();
    }
    if let Some(v) = a.n_teeth {
        cfg.biphoton.n_teeth = v;
    }
    if let Some(v) = a.window_t {
        cfg.window.half_width = v;
    }
    if let Some(v) = a.n_grid {
        cfg.window.n_grid = v;
    }
    if a.oracle {
        cfg.oracle = true;
    }
    cfg.threads = match a.threads {
        Some(n) => Some(n),
        None => match std::env::var(THREADS_ENV) {
            Ok(s) => Some(
                s.trim()
                    .parse()
                    .map_err(|_| Error::Config(format!("{THREADS_ENV}: cannot parse `{s}`")))?,
            ),
            Err(_) => cfg.threads,
        },
    };
    if cfg.threads == Some(0) {
        return Err(Error::Config("thread count must be positive".into()));
    }
    Ok(cfg)
}

fn dispatch(command: &Command, cfg: &RunConfig) -> Result<i32> {
    match command {
        Command::Talbot(TalbotCommand::Sweep) => {
            let reports = talbot_sweep(cfg)?;
            println!("wrote {} indicator values to {}", reports.len(), cfg.out.display());
        }
        Command::Talbot(TalbotCommand::Density) => {
            talbot_density(cfg)?;
            println!("wrote rho_a.csv and p_a1_b1.csv to {}", cfg.out.display());
        }
        Command::Biphoton(BiphotonCommand::Slice) => {
            cfg.biphoton.validate()?;
            cfg.window.validate(&cfg.biphoton)?;
            let o = biphoton_slice(cfg)?;
            println!("tei_time alpha = {}", format_sci(o.tei_alpha, cfg.precision));
            println!("tei_time beta = {}", format_sci(o.tei_beta, cfg.precision));
            if let (Some(a), Some(b)) = (o.oracle_linf_alpha, o.oracle_linf_beta) {
                println!("oracle linf alpha = {}", format_sci(a, cfg.precision));
                println!("oracle linf beta = {}", format_sci(b, cfg.precision));
            }
        }
        Command::Selftest => {
            let summary = selftest(cfg);
            println!("{}", serde_json::to_string_pretty(&summary)?);
            return Ok(if summary.passed { EXIT_OK } else { EXIT_NUMERICAL });
        }
    }
    Ok(EXIT_OK)
}

/// Parses `args` and runs the command; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let result = resolve_config(&cli).and_then(|cfg| {
        let mut builder = rayon::ThreadPoolBuilder::new();
        if let Some(n) = cfg.threads {
            builder = builder.num_threads(n);
        }
        let pool = builder
            .build()
            .map_err(|e| Error::Config(format!("thread pool: {e}")))?;
        pool.install(|| dispatch(&cli.command, &cfg))
    });
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            if e.is_numerical() {
                EXIT_NUMERICAL
            } else {
                EXIT_USAGE
            }
        }
    }
}
