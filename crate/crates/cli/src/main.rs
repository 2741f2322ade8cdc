//! Command-line front end: configure, run, and export experiment batches,
//! compute oracle strength tables, and reproduce the benchmark figure data
//! at a chosen scale.

mod figure;
mod oracle_cmd;
mod run_cmd;
mod spec;

use std::path::PathBuf;

use anyhow::Result;
use clap::{Parser, Subcommand};

/// Environment variable overriding the default output directory.
pub const OUTPUT_DIR_ENV: &str = "NORMBIT_OUTPUT_DIR";

#[derive(Parser)]
#[command(
    name = "normbit",
    version,
    about = "Benchmark elitist (1+lambda) EAs with controllable mutation-strength distributions on OneMax and LeadingOnes"
)]
struct Cli {
    /// Directory for output files (default: $NORMBIT_OUTPUT_DIR or ./results)
    #[arg(long, global = true)]
    output_dir: Option<PathBuf>,

    /// Number of worker threads for parallel runs (default: all cores)
    #[arg(long, global = true)]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one algorithm configuration and write raw + summary files
    Run(run_cmd::RunArgs),
    /// Compute a per-fitness oracle strength table and write it as CSV
    Oracle(oracle_cmd::OracleArgs),
    /// Reproduce the data behind one of the four benchmark figures
    Figure(figure::FigureArgs),
}

fn output_dir(cli: &Cli) -> PathBuf {
    cli.output_dir.clone().unwrap_or_else(|| {
        std::env::var_os(OUTPUT_DIR_ENV)
            .map(PathBuf::from)
            .unwrap_or_else(|| PathBuf::from("results"))
    })
}

fn main() {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        // ignore failure: the pool may already be initialized in tests
        let _ = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global();
    }
    let out = output_dir(&cli);
    let result: Result<()> = match &cli.command {
        Command::Run(args) => run_cmd::run(args, &out),
        Command::Oracle(args) => oracle_cmd::run(args, &out),
        Command::Figure(args) => figure::run(args, &out),
    };
    if let Err(err) = result {
        eprintln!("error: {err}");
        std::process::exit(1);
    }
}
