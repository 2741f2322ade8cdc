//! Benchmark fitness functions and evaluation counting.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::bitstring::BitString;
use crate::error::{Error, Result};

/// Number of one-bits.
pub fn onemax(x: &BitString) -> usize {
    x.count_ones()
}

/// Length of the maximal all-ones prefix.
pub fn leadingones(x: &BitString) -> usize {
    x.leading_ones()
}

/// The two benchmark problems. Both are maximized and have optimum `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Problem {
    OneMax,
    LeadingOnes,
}

impl Problem {
    pub fn evaluate(self, x: &BitString) -> usize {
        match self {
            Problem::OneMax => onemax(x),
            Problem::LeadingOnes => leadingones(x),
        }
    }

    /// Fitness value of the global optimum.
    pub fn optimum(self, n: usize) -> usize {
        n
    }

    /// Default evaluation budget: 1000 n ln n for OneMax and 100 n^2 for
    /// LeadingOnes, at least an order of magnitude above the expected
    /// optimization times so that censoring is negligible.
    pub fn default_budget(self, n: usize) -> u64 {
        let nf = n as f64;
        match self {
            Problem::OneMax => (1000.0 * nf * nf.ln()).ceil() as u64,
            Problem::LeadingOnes => 100 * (n as u64).pow(2),
        }
        .max(1000)
    }

    pub fn name(self) -> &'static str {
        match self {
            Problem::OneMax => "onemax",
            Problem::LeadingOnes => "leadingones",
        }
    }
}

impl fmt::Display for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Problem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "onemax" | "om" => Ok(Problem::OneMax),
            "leadingones" | "lo" => Ok(Problem::LeadingOnes),
            other => Err(Error::Config(format!("unknown problem {other:?}"))),
        }
    }
}

/// Number of fitness evaluations performed so far. Increments by exactly one
/// per evaluation and never decreases.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct EvalCounter(u64);

impl EvalCounter {
    pub fn new() -> Self {
        EvalCounter(0)
    }

    pub fn increment(&mut self) {
        self.0 += 1;
    }

    pub fn count(self) -> u64 {
        self.0
    }
}

/// A fitness function together with its evaluation counter. All evaluations
/// in a run are routed through one of these, so the counter is the single
/// source of truth for budgets and fixed-target logs.
#[derive(Clone, Debug)]
pub struct CountingFitness {
    problem: Problem,
    counter: EvalCounter,
}

impl CountingFitness {
    pub fn new(problem: Problem) -> Self {
        CountingFitness {
            problem,
            counter: EvalCounter::new(),
        }
    }

    pub fn evaluate(&mut self, x: &BitString) -> usize {
        self.counter.increment();
        self.problem.evaluate(x)
    }

    pub fn count(&self) -> u64 {
        self.counter.count()
    }

    pub fn problem(&self) -> Problem {
        self.problem
    }
}
