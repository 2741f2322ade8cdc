//! Experiment specification: algorithm identifiers, defaults, and the
//! optional plain-text `key = value` spec file.

use std::collections::HashMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use anyhow::{bail, Context, Result};
use clap::ValueEnum;
use normbit::{AlgorithmConfig, OracleKind, Problem, Variant};

/// Algorithm identifiers as used on the command line and in output files.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum AlgorithmId {
    /// Two-rate EA: half the offspring at rate r/2n, half at 2r/n
    TwoRate,
    /// Half the offspring at the deterministic strength r, half at uniform rates
    Half,
    /// Normal-strength EA at the binomial-matching variance
    Norm,
    /// Normal-strength EA with self-adjusting variance
    Var,
    /// Static normal-strength meta-algorithm (meta-r, meta-var)
    Meta,
    /// Plain EA with a static conditional binomial at rate r-init/n
    Plain,
    /// Randomized local search: one single-bit flip per iteration
    Rls,
    /// (1+1) search flipping the drift-maximizing strength (OneMax)
    RlsDrift,
    /// (1+1) search flipping the probability-maximizing strength (LeadingOnes)
    RlsOpt,
}

impl AlgorithmId {
    pub fn name(self) -> &'static str {
        match self {
            AlgorithmId::TwoRate => "two-rate",
            AlgorithmId::Half => "half",
            AlgorithmId::Norm => "norm",
            AlgorithmId::Var => "var",
            AlgorithmId::Meta => "meta",
            AlgorithmId::Plain => "plain",
            AlgorithmId::Rls => "rls",
            AlgorithmId::RlsDrift => "rls-drift",
            AlgorithmId::RlsOpt => "rls-opt",
        }
    }

    pub fn variant(self) -> Variant {
        match self {
            AlgorithmId::TwoRate => Variant::TwoRate,
            AlgorithmId::Half => Variant::Half,
            AlgorithmId::Norm => Variant::Norm,
            AlgorithmId::Var => Variant::Var,
            AlgorithmId::Meta => Variant::Meta,
            AlgorithmId::Plain => Variant::PlainEa,
            AlgorithmId::Rls => Variant::Rls,
            AlgorithmId::RlsDrift | AlgorithmId::RlsOpt => Variant::OracleRls,
        }
    }
}

impl fmt::Display for AlgorithmId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A fully resolved experiment: what to run and where to write it.
#[derive(Clone, Debug)]
pub struct ExperimentSpec {
    pub algorithm: AlgorithmId,
    pub problem: Problem,
    pub n: usize,
    pub lambda: usize,
    pub r_init: Option<f64>,
    pub sigma: f64,
    pub f_discount: f64,
    pub meta_r: f64,
    pub meta_var: f64,
    pub runs: usize,
    pub budget: Option<u64>,
    pub seed: u64,
    pub targets: Option<Vec<usize>>,
    pub json_mirror: bool,
}

impl ExperimentSpec {
    /// Builds the library configuration, applying the per-variant `r_init`
    /// default when none was given.
    pub fn config(&self) -> AlgorithmConfig {
        let mut cfg = AlgorithmConfig::new(self.algorithm.variant()).with_lambda(self.lambda);
        if let Some(r) = self.r_init {
            cfg.r_init = r;
        }
        cfg.sigma = self.sigma;
        cfg.f_discount = self.f_discount;
        cfg.meta_r = self.meta_r;
        cfg.meta_var = self.meta_var;
        cfg.budget = self.budget;
        cfg.oracle_kind = match self.algorithm {
            AlgorithmId::RlsOpt => OracleKind::Opt,
            _ => OracleKind::Drift,
        };
        cfg
    }

    /// Validates everything before any run starts. Diagnostics name the
    /// offending field.
    pub fn validate(&self) -> Result<()> {
        if self.runs == 0 {
            bail!("runs must be at least 1");
        }
        if let Some(targets) = &self.targets {
            if targets.is_empty() {
                bail!("targets must not be empty when given");
            }
            if let Some(&bad) = targets.iter().find(|&&t| t > self.n) {
                bail!("targets must lie in [0, n]; got {bad} with n = {}", self.n);
            }
        }
        self.config()
            .validate(self.problem, self.n)
            .map_err(|e| anyhow::anyhow!("{e}"))
    }

    /// Targets to summarize: the explicit list, or every value in `[0, n]`.
    pub fn resolved_targets(&self) -> Vec<usize> {
        match &self.targets {
            Some(t) => t.clone(),
            None => (0..=self.n).collect(),
        }
    }

    /// Base name for output files.
    pub fn file_stem(&self) -> String {
        format!(
            "{}_{}_n{}_l{}",
            self.algorithm.name(),
            self.problem.name(),
            self.n,
            self.lambda
        )
    }
}

/// Key-value pairs from a plain-text spec file: one `key = value` per line,
/// `#` starts a comment. Keys match the long command-line flags.
pub struct SpecFile {
    values: HashMap<String, String>,
}

impl SpecFile {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("cannot read spec file {}", path.display()))?;
        let mut values = HashMap::new();
        for (idx, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                bail!("spec file line {} is not `key = value`: {line:?}", idx + 1);
            };
            values.insert(key.trim().to_string(), value.trim().to_string());
        }
        Ok(SpecFile { values })
    }

    pub fn get<T: FromStr>(&self, key: &str) -> Result<Option<T>>
    where
        T::Err: fmt::Display,
    {
        match self.values.get(key) {
            None => Ok(None),
            Some(raw) => raw
                .parse()
                .map(Some)
                .map_err(|e| anyhow::anyhow!("spec file field {key} = {raw:?}: {e}")),
        }
    }

    pub fn known_keys_check(&self, allowed: &[&str]) -> Result<()> {
        for key in self.values.keys() {
            if !allowed.contains(&key.as_str()) {
                bail!("spec file has unknown field {key:?}");
            }
        }
        Ok(())
    }
}

/// Parses a comma-separated list of integers.
pub fn parse_usize_list(raw: &str) -> Result<Vec<usize>> {
    raw.split(',')
        .map(|part| {
            part.trim()
                .parse::<usize>()
                .with_context(|| format!("invalid list entry {part:?}"))
        })
        .collect()
}
