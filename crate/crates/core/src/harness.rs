//! Batch execution of seeded runs and fixed-target statistics.

use rayon::prelude::*;

use crate::algorithms::{self, AlgorithmConfig};
use crate::error::{Error, Result};
use crate::fitness::Problem;
use crate::sampling::RandomSource;

const UNREACHED: u64 = u64::MAX;

/// Per-run record of the first evaluation at which each fitness value was
/// reached. Stored densely: `first_hit(v)` is an O(1) lookup for every
/// target `v` in `[0, n]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedTargetLog {
    n: usize,
    first_hit: Vec<u64>,
    best: Option<usize>,
    evals: u64,
}

impl FixedTargetLog {
    pub fn new(n: usize) -> Self {
        FixedTargetLog {
            n,
            first_hit: vec![UNREACHED; n + 1],
            best: None,
            evals: 0,
        }
    }

    /// Records that a point of fitness `fitness` was evaluated as evaluation
    /// number `eval` (1-based). Every target up to `fitness` that was not
    /// reached before gets `eval` as its first hit.
    pub fn record(&mut self, fitness: usize, eval: u64) {
        debug_assert!(fitness <= self.n && eval >= 1);
        self.evals = self.evals.max(eval);
        let from = match self.best {
            None => 0,
            Some(best) if fitness > best => best + 1,
            _ => return,
        };
        for v in from..=fitness {
            self.first_hit[v] = eval;
        }
        self.best = Some(fitness);
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    /// Evaluation count at which fitness `target` was first reached, if it
    /// was.
    pub fn first_hit(&self, target: usize) -> Option<u64> {
        match self.first_hit.get(target) {
            Some(&e) if e != UNREACHED => Some(e),
            _ => None,
        }
    }

    /// Best fitness evaluated so far.
    pub fn reached_max(&self) -> Option<usize> {
        self.best
    }

    /// Total evaluations recorded.
    pub fn total_evals(&self) -> u64 {
        self.evals
    }
}

/// Quantile probes reported per target cell.
pub const QUANTILE_PROBES: [f64; 7] = [0.02, 0.10, 0.25, 0.50, 0.75, 0.90, 0.98];

/// First-hitting-time statistics of one (algorithm, problem, n, target)
/// cell, over the runs that reached the target.
#[derive(Clone, Debug, PartialEq)]
pub struct SummaryStats {
    pub target: usize,
    /// Runs that reached the target; below the batch size the cell is
    /// censored.
    pub count: usize,
    /// Average first hitting time.
    pub aht: f64,
    /// Relative standard deviation: unbiased sample standard deviation over
    /// the mean (0 for a single run).
    pub rsd: f64,
    /// Values at the [`QUANTILE_PROBES`], linearly interpolated between
    /// closest order statistics.
    pub quantiles: [f64; 7],
}

/// Executes `runs` independent seeded runs. Run `i` uses the child source
/// derived from `(master_seed, i)`, so results are identical whether runs
/// execute in parallel or sequentially.
pub fn execute_batch(
    cfg: &AlgorithmConfig,
    problem: Problem,
    n: usize,
    runs: usize,
    master_seed: u64,
) -> Result<Vec<FixedTargetLog>> {
    if runs == 0 {
        return Err(Error::Config("runs must be at least 1".into()));
    }
    cfg.validate(problem, n)?;
    let table = algorithms::build_oracle_table(cfg, problem, n)?;
    (0..runs)
        .into_par_iter()
        .map(|i| {
            let mut rng = RandomSource::child(master_seed, i as u64);
            algorithms::run_with_table(cfg, problem, n, &mut rng, table.as_ref())
        })
        .collect()
}

/// Type-7 quantile: linear interpolation between the closest order
/// statistics of the sorted sample.
fn quantile(sorted: &[f64], q: f64) -> f64 {
    debug_assert!(!sorted.is_empty());
    let h = (sorted.len() - 1) as f64 * q;
    let lo = h.floor() as usize;
    let hi = (lo + 1).min(sorted.len() - 1);
    sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo])
}

/// Statistics of `first_hit(target)` over the runs that reached the target;
/// `None` if no run did.
pub fn summarize(logs: &[FixedTargetLog], target: usize) -> Option<SummaryStats> {
    let mut hits: Vec<f64> = logs
        .iter()
        .filter_map(|log| log.first_hit(target).map(|e| e as f64))
        .collect();
    if hits.is_empty() {
        return None;
    }
    hits.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let count = hits.len();
    let mean = hits.iter().sum::<f64>() / count as f64;
    let rsd = if count > 1 {
        let ss: f64 = hits.iter().map(|h| (h - mean).powi(2)).sum();
        (ss / (count - 1) as f64).sqrt() / mean
    } else {
        0.0
    };
    let mut quantiles = [0.0; 7];
    for (slot, &p) in quantiles.iter_mut().zip(QUANTILE_PROBES.iter()) {
        *slot = quantile(&hits, p);
    }
    Some(SummaryStats { target, count, aht: mean, rsd, quantiles })
}

/// Normalizes an average hitting time by the problem's growth scale:
/// `n ln n` for OneMax, `n^2` for LeadingOnes.
pub fn normalize_time(aht: f64, problem: Problem, n: usize) -> f64 {
    let nf = n as f64;
    match problem {
        Problem::OneMax => aht / (nf * nf.ln()),
        Problem::LeadingOnes => aht / (nf * nf),
    }
}

/// Average first hitting time per target, over the runs that reached it;
/// targets nobody reached are omitted. Ready for plotting.
pub fn fixed_target_curve(logs: &[FixedTargetLog], targets: &[usize]) -> Vec<(usize, f64)> {
    targets
        .iter()
        .filter_map(|&target| {
            let hits: Vec<u64> = logs.iter().filter_map(|l| l.first_hit(target)).collect();
            if hits.is_empty() {
                None
            } else {
                let mean = hits.iter().sum::<u64>() as f64 / hits.len() as f64;
                Some((target, mean))
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algorithms::Variant;

    fn log_with_hits(n: usize, hits: &[(usize, u64)]) -> FixedTargetLog {
        let mut log = FixedTargetLog::new(n);
        for &(f, e) in hits {
            log.record(f, e);
        }
        log
    }

    #[test]
    fn first_hits_fill_all_lower_targets() {
        let log = log_with_hits(6, &[(2, 1), (2, 2), (5, 7)]);
        assert_eq!(log.first_hit(0), Some(1));
        assert_eq!(log.first_hit(2), Some(1));
        assert_eq!(log.first_hit(3), Some(7));
        assert_eq!(log.first_hit(5), Some(7));
        assert_eq!(log.first_hit(6), None);
        assert_eq!(log.reached_max(), Some(5));
        assert_eq!(log.total_evals(), 7);
    }

    #[test]
    fn first_hit_is_monotone() {
        let log = log_with_hits(10, &[(1, 1), (4, 3), (4, 9), (9, 20)]);
        let mut prev = 0;
        for v in 0..=10 {
            if let Some(e) = log.first_hit(v) {
                assert!(e >= prev);
                prev = e;
            }
        }
    }

    #[test]
    fn summarize_constant_sample() {
        let logs: Vec<FixedTargetLog> = (0..3).map(|_| log_with_hits(4, &[(4, 100)])).collect();
        let s = summarize(&logs, 4).unwrap();
        assert_eq!(s.count, 3);
        assert_eq!(s.aht, 100.0);
        assert_eq!(s.rsd, 0.0);
        assert!(s.quantiles.iter().all(|&q| q == 100.0));
    }

    #[test]
    fn summarize_interpolates_the_median() {
        let logs: Vec<FixedTargetLog> =
            (1..=100).map(|e| log_with_hits(1, &[(1, e as u64)])).collect();
        let s = summarize(&logs, 1).unwrap();
        assert_eq!(s.quantiles[3], 50.5);
        assert_eq!(s.aht, 50.5);
        let mut prev = f64::MIN;
        for q in s.quantiles {
            assert!(q >= prev);
            prev = q;
        }
    }

    #[test]
    fn summarize_flags_censoring_and_empty_cells() {
        let mut logs = vec![log_with_hits(4, &[(4, 10)]), log_with_hits(4, &[(2, 5)])];
        let s = summarize(&logs, 4).unwrap();
        assert_eq!(s.count, 1);
        assert_eq!(s.rsd, 0.0);
        logs.pop();
        logs[0] = log_with_hits(4, &[(2, 5)]);
        assert!(summarize(&logs, 4).is_none());
    }

    #[test]
    fn summarize_is_permutation_invariant() {
        let a = log_with_hits(3, &[(3, 11)]);
        let b = log_with_hits(3, &[(3, 29)]);
        let c = log_with_hits(3, &[(3, 17)]);
        let s1 = summarize(&[a.clone(), b.clone(), c.clone()], 3).unwrap();
        let s2 = summarize(&[c, a, b], 3).unwrap();
        assert_eq!(s1, s2);
    }

    #[test]
    fn normalization_reference_points() {
        let n = 2000;
        assert!((normalize_time(1_990_912.0, Problem::LeadingOnes, n) - 0.497728).abs() < 1e-6);
        let n = 10_000;
        assert!((normalize_time(90_276.0, Problem::OneMax, n) - 0.9802).abs() < 1e-3);
        assert!((normalize_time(1000.0 * 1000.0f64.ln(), Problem::OneMax, 1000) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn curve_starts_at_one_and_is_non_decreasing() {
        let cfg = AlgorithmConfig::new(Variant::Rls);
        let logs = execute_batch(&cfg, Problem::OneMax, 64, 20, 7).unwrap();
        let targets: Vec<usize> = (0..=64).collect();
        let curve = fixed_target_curve(&logs, &targets);
        assert_eq!(curve[0], (0, 1.0));
        let mut prev = 0.0;
        for &(_, aht) in &curve {
            assert!(aht >= prev);
            prev = aht;
        }
        // at the optimum the curve equals the mean optimization time
        let (last_target, last_aht) = *curve.last().unwrap();
        assert_eq!(last_target, 64);
        let mean: f64 =
            logs.iter().map(|l| l.first_hit(64).unwrap() as f64).sum::<f64>() / logs.len() as f64;
        assert_eq!(last_aht, mean);
    }

    #[test]
    fn batches_are_reproducible_and_order_independent() {
        let cfg = AlgorithmConfig::new(Variant::Norm).with_lambda(2);
        let a = execute_batch(&cfg, Problem::OneMax, 120, 10, 42).unwrap();
        let b = execute_batch(&cfg, Problem::OneMax, 120, 10, 42).unwrap();
        assert_eq!(a, b);
        // singleton batch equals the first child run
        let single = execute_batch(&cfg, Problem::OneMax, 120, 1, 42).unwrap();
        assert_eq!(single[0], a[0]);
    }
}
