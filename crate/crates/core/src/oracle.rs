//! Exact per-fitness mutation-strength oracles.
//!
//! For OneMax this module computes the expected elitist fitness gain (drift)
//! of a `k`-bit flip and the drift-maximizing strength per fitness level.
//! For LeadingOnes it computes the exact improvement probability, the
//! probability-maximizing strength, and the exact expected optimization time
//! of a table-driven elitist (1+1) algorithm. It also measures empirically
//! what fraction of a run is spent at fitness levels whose table strength is
//! one.

use rayon::prelude::*;

use crate::bitstring::BitString;
use crate::error::{Error, Result};
use crate::fitness::Problem;
use crate::sampling::RandomSource;

/// Per-fitness mutation strengths `k(v)` for `v` in `[0, n-1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrengthTable {
    n: usize,
    strengths: Vec<usize>,
}

impl StrengthTable {
    /// Builds a table from explicit entries; every entry must be in `[1, n]`
    /// and there must be one entry per fitness level `0..n`.
    pub fn new(n: usize, strengths: Vec<usize>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidDimension);
        }
        if strengths.len() != n {
            return Err(Error::Config(format!(
                "strength table needs {n} entries, got {}",
                strengths.len()
            )));
        }
        if let Some(&bad) = strengths.iter().find(|&&k| k < 1 || k > n) {
            return Err(Error::Config(format!(
                "strength table entry {bad} outside [1, {n}]"
            )));
        }
        Ok(StrengthTable { n, strengths })
    }

    /// The constant table `k(v) = strength`; `constant(n, 1)` is plain RLS.
    pub fn constant(n: usize, strength: usize) -> Result<Self> {
        Self::new(n, vec![strength; n])
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    /// Strength prescribed at fitness `v`. Panics if `v >= n`; the optimum
    /// has no entry.
    pub fn strength(&self, v: usize) -> usize {
        self.strengths[v]
    }

    pub fn entries(&self) -> &[usize] {
        &self.strengths
    }
}

/// Cumulative log-factorial table; `ln C(n,k)` queries are exact to a few
/// ulps for every `n` this crate targets.
struct LnFactorial(Vec<f64>);

impl LnFactorial {
    fn new(n: usize) -> Self {
        let mut table = Vec::with_capacity(n + 1);
        table.push(0.0);
        let mut sum = 0.0;
        let mut carry = 0.0; // Kahan compensation
        for i in 1..=n {
            let term = (i as f64).ln() - carry;
            let next = sum + term;
            carry = (next - sum) - term;
            sum = next;
            table.push(sum);
        }
        LnFactorial(table)
    }

    fn ln_choose(&self, n: usize, k: usize) -> f64 {
        debug_assert!(k <= n && n < self.0.len());
        self.0[n] - self.0[k] - self.0[n - k]
    }
}

fn check_fitness_range(n: usize, v: usize, upper_inclusive: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidDimension);
    }
    if v > upper_inclusive {
        return Err(Error::Domain(format!(
            "fitness {v} outside [0, {upper_inclusive}] for n = {n}"
        )));
    }
    Ok(())
}

fn check_strength_range(n: usize, k: usize) -> Result<()> {
    if k < 1 || k > n {
        return Err(Error::InvalidStrength { strength: k, n });
    }
    Ok(())
}

/// Expected elitist fitness gain on OneMax at fitness `v` when flipping
/// exactly `k` bits: with `m` flipped zero-bits hypergeometrically
/// distributed, sums `(2m - k)` over the outcomes that gain fitness.
pub fn onemax_drift(n: usize, v: usize, k: usize) -> Result<f64> {
    check_fitness_range(n, v, n)?;
    check_strength_range(n, k)?;
    Ok(drift_with(&LnFactorial::new(n), n, v, k))
}

fn drift_with(lf: &LnFactorial, n: usize, v: usize, k: usize) -> f64 {
    let zeros = n - v;
    // positive gain needs 2m - k > 0
    let m_lo = (k / 2 + 1).max(k.saturating_sub(v));
    let m_hi = k.min(zeros);
    if m_lo > m_hi {
        return 0.0;
    }
    // P(m) = C(zeros, m) C(v, k-m) / C(n, k), then ratio recurrence in m
    let mut prob =
        (lf.ln_choose(zeros, m_lo) + lf.ln_choose(v, k - m_lo) - lf.ln_choose(n, k)).exp();
    let mut drift = 0.0;
    let mut m = m_lo;
    loop {
        drift += (2 * m - k) as f64 * prob;
        if m == m_hi {
            break;
        }
        prob *= ((zeros - m) * (k - m)) as f64 / ((m + 1) * (v + m + 1 - k)) as f64;
        m += 1;
    }
    drift
}

/// Drift-maximizing strength at OneMax fitness `v`, ties toward smaller `k`.
/// Undefined at the optimum.
pub fn onemax_k_drift(n: usize, v: usize) -> Result<usize> {
    check_fitness_range(n, v, n.saturating_sub(1))?;
    let lf = LnFactorial::new(n);
    Ok(k_drift_with(&lf, n, v).0)
}

fn k_drift_with(lf: &LnFactorial, n: usize, v: usize) -> (usize, f64) {
    let mut best = (1, drift_with(lf, n, v, 1));
    for k in 2..=n {
        let d = drift_with(lf, n, v, k);
        if d > best.1 {
            best = (k, d);
        }
    }
    best
}

/// Drift-maximizing strengths for all OneMax fitness levels, with the
/// attained drift values. Levels are independent and computed in parallel.
pub fn onemax_drift_table(n: usize) -> Result<(StrengthTable, Vec<f64>)> {
    if n == 0 {
        return Err(Error::InvalidDimension);
    }
    let lf = LnFactorial::new(n);
    let cells: Vec<(usize, f64)> = (0..n)
        .into_par_iter()
        .map(|v| k_drift_with(&lf, n, v))
        .collect();
    let (strengths, drifts) = cells.into_iter().unzip();
    Ok((StrengthTable::new(n, strengths)?, drifts))
}

/// Probability that a `k`-bit flip strictly improves a LeadingOnes value of
/// `i`: the bit after the prefix must flip and the other `k-1` flips must
/// land behind it, so `C(n-i-1, k-1) / C(n, k)`, and 0 when `k > n-i`.
pub fn lo_improve_prob(n: usize, i: usize, k: usize) -> Result<f64> {
    check_fitness_range(n, i, n.saturating_sub(1))?;
    check_strength_range(n, k)?;
    if k > n - i {
        return Ok(0.0);
    }
    // Product form: C(n-i-1, k-1)/C(n,k) = (k/n) * prod_{j=1}^{k-1} (n-i-j)/(n-j).
    // Every factor is <= 1, so this cannot overflow and P(k=1) = 1/n exactly.
    let mut p = k as f64 / n as f64;
    for j in 1..k {
        p *= (n - i - j) as f64 / (n - j) as f64;
    }
    Ok(p)
}

/// Improvement-probability-maximizing strength at LeadingOnes fitness `i`,
/// ties toward smaller `k`.
pub fn lo_k_opt(n: usize, i: usize) -> Result<usize> {
    check_fitness_range(n, i, n.saturating_sub(1))?;
    Ok(lo_k_opt_scan(n, i).0)
}

fn lo_k_opt_scan(n: usize, i: usize) -> (usize, f64) {
    // P(k+1)/P(k) = ((n-i-k)/k) * ((k+1)/(n-k)); strengths above n-i never improve
    let mut p = 1.0 / n as f64;
    let mut best = (1, p);
    for k in 1..(n - i) {
        p *= (n - i - k) as f64 * (k + 1) as f64 / (k * (n - k)) as f64;
        if p > best.1 {
            best = (k + 1, p);
        }
    }
    best
}

/// Probability-maximizing strengths for all LeadingOnes fitness levels, with
/// the attained improvement probabilities.
pub fn lo_opt_table(n: usize) -> Result<(StrengthTable, Vec<f64>)> {
    if n == 0 {
        return Err(Error::InvalidDimension);
    }
    let cells: Vec<(usize, f64)> = (0..n).into_par_iter().map(|i| lo_k_opt_scan(n, i)).collect();
    let (strengths, probs) = cells.into_iter().unzip();
    Ok((StrengthTable::new(n, strengths)?, probs))
}

/// Exact expected number of mutation steps (offspring evaluations after the
/// initial one) until the elitist (1+1) algorithm that flips `table(i)` bits
/// at fitness `i` first evaluates the LeadingOnes optimum, starting from a
/// uniformly random point.
///
/// Visit probabilities of the fitness levels are computed exactly from the
/// free-rider distribution: the bits behind the leading-ones prefix stay
/// uniformly distributed throughout the run, so an improvement at level `i`
/// jumps to `i + 1 + G` with `P(G = g) = 2^-(g+1)`. The expected waiting
/// time at a visited level is the inverse improvement probability.
pub fn lo_expected_time(n: usize, table: &StrengthTable) -> Result<f64> {
    if table.dimension() != n {
        return Err(Error::Config(format!(
            "strength table dimension {} does not match n = {n}",
            table.dimension()
        )));
    }
    let mut total = 0.0;
    let mut incoming = 0.0; // sum over earlier levels of visit(i) * 2^-(j-i)
    let mut init_mass = 0.5; // P(initial fitness = j) = 2^-(j+1)
    for j in 0..n {
        let visit = init_mass + incoming;
        let q = lo_improve_prob(n, j, table.strength(j))?;
        if q <= 0.0 {
            return Err(Error::DivergentTable(j));
        }
        total += visit / q;
        incoming = (incoming + visit) * 0.5;
        init_mass *= 0.5;
    }
    Ok(total)
}

/// Runs elitist (1+1) search flipping `strengths(fitness)` bits per step and
/// returns the fraction of evaluations spent at fitness levels where
/// `regime(fitness) = 1`, aggregated over `runs` independent runs. Each
/// evaluation is attributed to the parent fitness at the moment the
/// offspring is generated; runs are capped at the problem default budget.
pub fn regime_fraction(
    n: usize,
    regime: &StrengthTable,
    strengths: &StrengthTable,
    problem: Problem,
    runs: usize,
    rng: &mut RandomSource,
) -> Result<f64> {
    if runs == 0 {
        return Err(Error::Config("runs must be at least 1".into()));
    }
    if regime.dimension() != n || strengths.dimension() != n {
        return Err(Error::Config(format!("strength table dimension must be {n}")));
    }
    let budget = problem.default_budget(n);
    let mut in_regime = 0u64;
    let mut total = 0u64;
    for _ in 0..runs {
        let mut x = BitString::new_uniform(n, rng)?;
        let mut fx = problem.evaluate(&x);
        let mut evals = 1u64;
        total += 1;
        if fx < n && regime.strength(fx) == 1 {
            in_regime += 1;
        }
        while fx < n && evals < budget {
            let y = x.mutate(strengths.strength(fx), rng)?;
            let fy = problem.evaluate(&y);
            evals += 1;
            total += 1;
            if regime.strength(fx) == 1 {
                in_regime += 1;
            }
            if fy >= fx {
                x = y;
                fx = fy;
            }
        }
    }
    Ok(in_regime as f64 / total as f64)
}
