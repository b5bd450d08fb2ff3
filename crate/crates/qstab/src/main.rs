mod commands;
mod config;
mod error;
mod output;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use config::Config;
use error::CliError;
use output::Outputs;

#[derive(Parser)]
#[command(
    name = "qstab",
    version,
    about = "Parametric-stability toolkit: Arnold-tongue charts, circuit band \
             structure, black-box network modes, and driven-pendulum sections",
    subcommand_required = true
)]
struct Cli {
    /// INI-style config file; global flags override its [run] section
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,

    /// Output directory (default: current directory)
    #[arg(long, global = true, value_name = "DIR")]
    out: Option<PathBuf>,

    /// Worker threads (default: all cores)
    #[arg(long, global = true, value_name = "N")]
    workers: Option<usize>,

    /// RNG seed for sampling subcommands (default: 0)
    #[arg(long, global = true, value_name = "U64")]
    seed: Option<u64>,

    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Chart parametric stability over a (delta, epsilon) grid
    Tongue,
    /// Sweep circuit eigenenergies along gate charge or flux
    Spectrum,
    /// Compare closed-form band energies against the eigensolver
    Bands,
    /// Scan a network's admittance and extract its linear modes
    Bbq,
    /// Strobe driven-pendulum trajectories once per drive period
    Poincare,
    /// Monte Carlo fabrication scatter mapped to chart labels
    Mc,
    /// Tabulate characteristic-value curves a_n(q) and b_n(q)
    Charvals,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(cli: &Cli) -> Result<(), CliError> {
    let text = match &cli.config {
        Some(path) => fs::read_to_string(path).map_err(|e| {
            CliError::config(format!("cannot read config {}: {e}", path.display()))
        })?,
        None => String::new(),
    };
    let cfg = Config::parse(&text)?;

    // Flags win over the [run] section, which wins over defaults.
    let out_dir = cli
        .out
        .clone()
        .or_else(|| cfg.raw("run", "out").map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("."));
    let workers = match cli.workers {
        Some(w) => Some(w),
        None => cfg.usize("run", "workers")?,
    };
    if workers == Some(0) {
        return Err(CliError::config("workers: must be at least 1"));
    }
    let seed = match cli.seed {
        Some(s) => s,
        None => cfg.u64("run", "seed")?.unwrap_or(0),
    };

    let mut outputs = Outputs::new(&out_dir)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.unwrap_or(0))
        .build()
        .map_err(|e| CliError::config(format!("cannot build worker pool: {e}")))?;

    let result = pool.install(|| match cli.command {
        Cmd::Tongue => commands::tongue::run(&cfg, &mut outputs),
        Cmd::Spectrum => commands::spectrum::run(&cfg, &mut outputs),
        Cmd::Bands => commands::bands::run(&cfg, &mut outputs),
        Cmd::Bbq => commands::bbq::run(&cfg, &mut outputs),
        Cmd::Poincare => commands::poincare::run(&cfg, &mut outputs),
        Cmd::Mc => commands::mc::run(&cfg, seed, &mut outputs),
        Cmd::Charvals => commands::charvals::run(&cfg, &mut outputs),
    });
    if result.is_err() {
        // A failed run leaves no partial outputs behind.
        outputs.discard();
    }
    result
}
