//! The `run` subcommand: execute one configuration, write raw and summary
//! files, print the optimum AHT.

use std::fs::File;
use std::io::BufWriter;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use clap::Args;
use normbit::export::{self, SummaryMeta};
use normbit::{execute_batch, summarize, Problem};

use crate::spec::{parse_usize_list, AlgorithmId, ExperimentSpec, SpecFile};

#[derive(Args, Debug)]
pub struct RunArgs {
    /// Algorithm to run
    #[arg(long, short = 'a', value_enum)]
    algorithm: Option<AlgorithmId>,

    /// Benchmark problem
    #[arg(long, short = 'p')]
    problem: Option<Problem>,

    /// Problem dimension
    #[arg(long, short = 'n')]
    n: Option<usize>,

    /// Offspring per iteration (even for two-rate/half, 1 for rls variants)
    #[arg(long, short = 'l')]
    lambda: Option<usize>,

    /// Initial strength parameter (default 2 for the adaptive variants,
    /// 1 for plain); also the static rate numerator of plain
    #[arg(long)]
    r_init: Option<f64>,

    /// Scale of the uniform rate interval (0, sigma*r/n) used by half
    #[arg(long)]
    sigma: Option<f64>,

    /// Variance discount factor of var, in (0,1)
    #[arg(long = "f")]
    f_discount: Option<f64>,

    /// Static strength mean of meta
    #[arg(long)]
    meta_r: Option<f64>,

    /// Static strength variance of meta
    #[arg(long)]
    meta_var: Option<f64>,

    /// Number of independent runs
    #[arg(long, short = 'r')]
    runs: Option<usize>,

    /// Evaluation budget per run (default: 1000 n ln n for onemax,
    /// 100 n^2 for leadingones)
    #[arg(long)]
    budget: Option<u64>,

    /// Master seed; run i uses the child source derived from (seed, i)
    #[arg(long, short = 's')]
    seed: Option<u64>,

    /// Comma-separated fitness targets for the summary (default: all of  0..=n)
    #[arg(long)]
    targets: Option<String>,

    /// Output format: csv, or json to add a JSON mirror of the summary
    #[arg(long, value_parser = ["csv", "json"])]
    format: Option<String>,

    /// Plain-text `key = value` spec file; explicit flags take precedence
    #[arg(long)]
    spec_file: Option<PathBuf>,
}

const SPEC_KEYS: [&str; 15] = [
    "algorithm", "problem", "n", "lambda", "r-init", "sigma", "f", "meta-r", "meta-var", "runs",
    "budget", "seed", "targets", "format", "output-dir",
];

struct ParsedAlgorithm(AlgorithmId);

impl std::str::FromStr for ParsedAlgorithm {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        <AlgorithmId as clap::ValueEnum>::from_str(s, true).map(ParsedAlgorithm)
    }
}

/// Resolves flags against the optional spec file and defaults.
fn resolve(args: &RunArgs) -> Result<(ExperimentSpec, Option<PathBuf>)> {
    let file = match &args.spec_file {
        Some(path) => {
            let f = SpecFile::load(path)?;
            f.known_keys_check(&SPEC_KEYS)?;
            Some(f)
        }
        None => None,
    };
    macro_rules! field {
        ($flag:expr, $key:literal) => {
            match (&$flag, &file) {
                (Some(v), _) => Some(v.clone()),
                (None, Some(f)) => f.get($key)?,
                (None, None) => None,
            }
        };
    }
    let algorithm = match (&args.algorithm, &file) {
        (Some(a), _) => *a,
        (None, Some(f)) => f
            .get::<ParsedAlgorithm>("algorithm")?
            .map(|p| p.0)
            .ok_or_else(|| anyhow::anyhow!("algorithm is required"))?,
        (None, None) => anyhow::bail!("algorithm is required (flag --algorithm)"),
    };
    let problem: Problem = field!(args.problem, "problem")
        .ok_or_else(|| anyhow::anyhow!("problem is required (flag --problem)"))?;
    let n = field!(args.n, "n").ok_or_else(|| anyhow::anyhow!("n is required (flag --n)"))?;
    let targets = match field!(args.targets, "targets") {
        Some(raw) => Some(parse_usize_list(&raw)?),
        None => None,
    };
    let format = field!(args.format, "format").unwrap_or_else(|| "csv".to_string());
    if format != "csv" && format != "json" {
        anyhow::bail!("format must be csv or json, got {format:?}");
    }
    let output_dir = match (&file, ()) {
        (Some(f), ()) => f.get::<String>("output-dir")?.map(PathBuf::from),
        _ => None,
    };
    let spec = ExperimentSpec {
        algorithm,
        problem,
        n,
        lambda: field!(args.lambda, "lambda").unwrap_or(1),
        r_init: field!(args.r_init, "r-init"),
        sigma: field!(args.sigma, "sigma").unwrap_or(2.0),
        f_discount: field!(args.f_discount, "f").unwrap_or(0.98),
        meta_r: field!(args.meta_r, "meta-r").unwrap_or(1.0),
        meta_var: field!(args.meta_var, "meta-var").unwrap_or(0.0),
        runs: field!(args.runs, "runs").unwrap_or(100),
        budget: field!(args.budget, "budget"),
        seed: field!(args.seed, "seed").unwrap_or(1),
        targets,
        json_mirror: format == "json",
    };
    Ok((spec, output_dir))
}

pub fn run(args: &RunArgs, output_dir: &Path) -> Result<()> {
    let (spec, dir_override) = resolve(args)?;
    let output_dir = dir_override.as_deref().unwrap_or(output_dir);
    spec.validate()?;

    let cfg = spec.config();
    let logs = execute_batch(&cfg, spec.problem, spec.n, spec.runs, spec.seed)
        .map_err(|e| anyhow::anyhow!("{e}"))?;

    std::fs::create_dir_all(output_dir)
        .with_context(|| format!("cannot create output directory {}", output_dir.display()))?;
    let stem = spec.file_stem();

    let raw_path = output_dir.join(format!("{stem}_raw.csv"));
    export::write_raw_csv(BufWriter::new(File::create(&raw_path)?), &logs)?;

    let meta = SummaryMeta {
        algorithm: spec.algorithm.name().to_string(),
        problem: spec.problem,
        n: spec.n,
        lambda: spec.lambda,
    };
    let rows: Vec<_> = spec
        .resolved_targets()
        .into_iter()
        .map(|t| (t, summarize(&logs, t)))
        .collect();
    let summary_path = output_dir.join(format!("{stem}_summary.csv"));
    export::write_summary_csv(BufWriter::new(File::create(&summary_path)?), &meta, &rows)?;
    if spec.json_mirror {
        let json_path = output_dir.join(format!("{stem}_summary.json"));
        export::write_summary_json(BufWriter::new(File::create(&json_path)?), &meta, &rows)?;
    }

    let reached = logs.iter().filter(|l| l.first_hit(spec.n).is_some()).count();
    match summarize(&logs, spec.n) {
        Some(stats) => println!(
            "algorithm={} problem={} n={} lambda={} optimum_aht={} reached={}/{}",
            spec.algorithm,
            spec.problem,
            spec.n,
            spec.lambda,
            stats.aht,
            reached,
            spec.runs
        ),
        None => println!(
            "algorithm={} problem={} n={} lambda={} optimum_aht=unreached reached=0/{}",
            spec.algorithm, spec.problem, spec.n, spec.lambda, spec.runs
        ),
    }
    Ok(())
}
