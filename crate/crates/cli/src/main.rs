use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use sfperc_cli::config::ExperimentConfig;
use sfperc_cli::run_command;

/// Scale-free percolation simulator: generation, degree, percolation and
/// distance experiments on finite boxes/tori of Z^d.
#[derive(Parser)]
#[command(name = "sfperc", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct RunArgs {
    /// Path to the JSON experiment configuration.
    #[arg(long)]
    config: PathBuf,
    /// Output directory (created if missing).
    #[arg(long, default_value = ".")]
    out: PathBuf,
    /// Override the config's master seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Override the config's worker thread count.
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Closed-form constants and regime classification.
    Constants(RunArgs),
    /// Materialize one instance as edge-list and weights files.
    Generate(RunArgs),
    /// Origin-degree samples with tail or growth summaries.
    Degrees(RunArgs),
    /// Largest-component-fraction curves and threshold crossings.
    Percolation(RunArgs),
    /// Graph distance against Euclidean separation.
    Distances(RunArgs),
    /// The min-product moment g(u) against its envelope.
    Gfun(RunArgs),
}

fn dispatch(name: &str, args: &RunArgs) -> Result<(), sfperc_cli::error::CliError> {
    let cfg = ExperimentConfig::load(&args.config)?.resolve(args.seed, args.threads);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.threads)
        .build()
        .map_err(|e| sfperc_cli::error::CliError::Config(format!("thread pool: {e}")))?;
    pool.install(|| run_command(name, &cfg, &args.out))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (name, args) = match &cli.command {
        Command::Constants(a) => ("constants", a),
        Command::Generate(a) => ("generate", a),
        Command::Degrees(a) => ("degrees", a),
        Command::Percolation(a) => ("percolation", a),
        Command::Distances(a) => ("distances", a),
        Command::Gfun(a) => ("gfun", a),
    };
    match dispatch(name, args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("sfperc {name}: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
