//! The `figure` subcommand: regenerate the data behind the four benchmark
//! figures at a configurable scale.
//!
//! 1: average fixed-target curves for the full algorithm roster;
//! 2: oracle strength tables plus regime-occupancy fractions;
//! 3: by n*ln(n) normalized average optimization times on OneMax;
//! 4: by n^2 normalized average optimization times on LeadingOnes.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use anyhow::{Context, Result};
use clap::Args;
use normbit::export;
use normbit::{
    execute_batch, fixed_target_curve, normalize_time, oracle, summarize, Problem, RandomSource,
    StrengthTable,
};

use crate::spec::{parse_usize_list, AlgorithmId};

#[derive(Args, Debug)]
pub struct FigureArgs {
    /// Figure number (1-4)
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=4))]
    id: u8,

    /// Dimension for figures 1 and 2
    #[arg(long, short = 'n', default_value_t = 1000)]
    n: usize,

    /// Problems for figure 1 (default: both)
    #[arg(long, short = 'p')]
    problem: Option<Problem>,

    /// Comma-separated dimensions for the sweeps of figures 3 and 4
    #[arg(long)]
    n_list: Option<String>,

    /// Independent runs per configuration
    #[arg(long, short = 'r', default_value_t = 100)]
    runs: usize,

    /// Master seed
    #[arg(long, short = 's', default_value_t = 1)]
    seed: u64,
}

/// The eleven configurations reported throughout: five algorithm families at
/// lambda 2 and 50, plus RLS.
fn roster() -> Vec<(AlgorithmId, usize)> {
    let mut entries = Vec::new();
    for algorithm in [
        AlgorithmId::TwoRate,
        AlgorithmId::Half,
        AlgorithmId::Norm,
        AlgorithmId::Var,
        AlgorithmId::Plain,
    ] {
        for lambda in [50, 2] {
            entries.push((algorithm, lambda));
        }
    }
    entries.push((AlgorithmId::Rls, 1));
    entries
}

fn spec_for(algorithm: AlgorithmId, lambda: usize, problem: Problem, n: usize, runs: usize, seed: u64) -> crate::spec::ExperimentSpec {
    crate::spec::ExperimentSpec {
        algorithm,
        problem,
        n,
        lambda,
        r_init: None,
        sigma: 2.0,
        f_discount: 0.98,
        meta_r: 1.0,
        meta_var: 0.0,
        runs,
        budget: None,
        seed,
        targets: None,
        json_mirror: false,
    }
}

pub fn run(args: &FigureArgs, output_dir: &Path) -> Result<()> {
    std::fs::create_dir_all(output_dir)
        .with_context(|| format!("cannot create output directory {}", output_dir.display()))?;
    match args.id {
        1 => figure1(args, output_dir),
        2 => figure2(args, output_dir),
        3 => sweep(args, output_dir, Problem::OneMax, "figure3_onemax.csv", &[500, 1000, 2000]),
        4 => sweep(args, output_dir, Problem::LeadingOnes, "figure4_leadingones.csv", &[500, 1000]),
        _ => unreachable!("clap range"),
    }
}

/// Average fixed-target curves for every roster entry.
fn figure1(args: &FigureArgs, output_dir: &Path) -> Result<()> {
    let problems: &[Problem] = match args.problem {
        Some(p) => &[p],
        None => &[Problem::OneMax, Problem::LeadingOnes],
    };
    let targets: Vec<usize> = (0..=args.n).collect();
    for &problem in problems {
        let path = output_dir.join(format!("figure1_{problem}_n{}.csv", args.n));
        let mut w = BufWriter::new(File::create(&path)?);
        writeln!(w, "algorithm,lambda,target,aht")?;
        for (algorithm, lambda) in roster() {
            let spec = spec_for(algorithm, lambda, problem, args.n, args.runs, args.seed);
            spec.validate()?;
            let logs = execute_batch(&spec.config(), problem, args.n, args.runs, args.seed)
                .map_err(|e| anyhow::anyhow!("{e}"))?;
            for (target, aht) in fixed_target_curve(&logs, &targets) {
                writeln!(w, "{},{lambda},{target},{aht}", algorithm.name())?;
            }
        }
        println!("figure 1 data for {problem} written to {}", path.display());
    }
    Ok(())
}

/// Oracle strength tables plus regime-occupancy fractions for RLS and the
/// oracle-guided (1+1) variants.
fn figure2(args: &FigureArgs, output_dir: &Path) -> Result<()> {
    let n = args.n;
    let (drift_table, drift_values) =
        oracle::onemax_drift_table(n).map_err(|e| anyhow::anyhow!("{e}"))?;
    let (opt_table, opt_values) = oracle::lo_opt_table(n).map_err(|e| anyhow::anyhow!("{e}"))?;
    for (problem, table, values) in [
        (Problem::OneMax, &drift_table, &drift_values),
        (Problem::LeadingOnes, &opt_table, &opt_values),
    ] {
        let path = output_dir.join(format!("figure2_oracle_{problem}_n{n}.csv"));
        export::write_strength_table_csv(BufWriter::new(File::create(&path)?), table, values)?;
        println!("figure 2 oracle table for {problem} written to {}", path.display());
    }

    let rls = StrengthTable::constant(n, 1).map_err(|e| anyhow::anyhow!("{e}"))?;
    let path = output_dir.join(format!("figure2_regime_fractions_n{n}.csv"));
    let mut w = BufWriter::new(File::create(&path)?);
    writeln!(w, "problem,algorithm,runs,fraction")?;
    let cells: [(Problem, &str, &StrengthTable, &StrengthTable); 4] = [
        (Problem::OneMax, "rls", &drift_table, &rls),
        (Problem::OneMax, "rls-drift", &drift_table, &drift_table),
        (Problem::LeadingOnes, "rls", &opt_table, &rls),
        (Problem::LeadingOnes, "rls-opt", &opt_table, &opt_table),
    ];
    for (i, (problem, name, regime, strengths)) in cells.iter().enumerate() {
        let mut rng = RandomSource::child(args.seed, i as u64);
        let fraction = oracle::regime_fraction(n, regime, strengths, *problem, args.runs, &mut rng)
            .map_err(|e| anyhow::anyhow!("{e}"))?;
        writeln!(w, "{problem},{name},{},{fraction}", args.runs)?;
    }
    println!("figure 2 regime fractions written to {}", path.display());
    Ok(())
}

/// Normalized average optimization times over a dimension sweep.
fn sweep(
    args: &FigureArgs,
    output_dir: &Path,
    problem: Problem,
    file_name: &str,
    default_dims: &[usize],
) -> Result<()> {
    let dims = match &args.n_list {
        Some(raw) => parse_usize_list(raw)?,
        None => default_dims.to_vec(),
    };
    let path = output_dir.join(file_name);
    let mut w = BufWriter::new(File::create(&path)?);
    writeln!(w, "algorithm,lambda,n,count,aht,normalized")?;
    for &n in &dims {
        for (algorithm, lambda) in roster() {
            let spec = spec_for(algorithm, lambda, problem, n, args.runs, args.seed);
            spec.validate()?;
            let logs = execute_batch(&spec.config(), problem, n, args.runs, args.seed)
                .map_err(|e| anyhow::anyhow!("{e}"))?;
            match summarize(&logs, n) {
                Some(stats) => {
                    let normalized = normalize_time(stats.aht, problem, n);
                    writeln!(
                        w,
                        "{},{lambda},{n},{},{},{normalized}",
                        algorithm.name(),
                        stats.count,
                        stats.aht
                    )?;
                }
                None => writeln!(w, "{},{lambda},{n},0,,", algorithm.name())?,
            }
        }
    }
    println!("figure {} data written to {}", args.id, path.display());
    Ok(())
}
