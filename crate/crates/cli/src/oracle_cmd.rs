//! The `oracle` subcommand: per-fitness strength tables as CSV.

use std::fs::File;
use std::io::BufWriter;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use clap::Args;
use normbit::export;
use normbit::oracle;
use normbit::Problem;

#[derive(Args, Debug)]
pub struct OracleArgs {
    /// Benchmark problem: drift-maximizing strengths for onemax,
    /// improvement-probability-maximizing strengths for leadingones
    #[arg(long, short = 'p')]
    problem: Problem,

    /// Problem dimension
    #[arg(long, short = 'n')]
    n: usize,

    /// Output file (default: <output-dir>/oracle_<problem>_n<n>.csv)
    #[arg(long, short = 'o')]
    output: Option<PathBuf>,
}

pub fn run(args: &OracleArgs, output_dir: &Path) -> Result<()> {
    let (table, values) = match args.problem {
        Problem::OneMax => oracle::onemax_drift_table(args.n),
        Problem::LeadingOnes => oracle::lo_opt_table(args.n),
    }
    .map_err(|e| anyhow::anyhow!("{e}"))?;
    let path = match &args.output {
        Some(p) => p.clone(),
        None => {
            std::fs::create_dir_all(output_dir)
                .with_context(|| format!("cannot create output directory {}", output_dir.display()))?;
            output_dir.join(format!("oracle_{}_n{}.csv", args.problem, args.n))
        }
    };
    export::write_strength_table_csv(BufWriter::new(File::create(&path)?), &table, &values)?;
    println!("oracle table for {} n={} written to {}", args.problem, args.n, path.display());
    Ok(())
}
