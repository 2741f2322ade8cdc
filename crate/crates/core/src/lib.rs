//! Elitist (1+lambda) evolutionary algorithms whose mutation strength is
//! drawn from a controllable distribution, spanning the range from
//! deterministic local search (zero variance) to standard-bit-mutation-style
//! global search (binomial-matching variance).
//!
//! The crate provides:
//!
//! - packed [`BitString`] search points with an exact `l`-bit mutation
//!   operator, and the OneMax / LeadingOnes benchmarks with evaluation
//!   counting ([`fitness`]);
//! - the mutation-strength distributions (conditional binomial, conditional
//!   rounded normal, uniform-rate) and a reproducible seeded random source
//!   ([`sampling`]);
//! - eight algorithm variants sharing one elitist loop: the two-rate EA, the
//!   half-deterministic EA, normal-strength EAs with static and
//!   self-adjusting variance, a static meta-algorithm subsuming RLS and the
//!   plain EA, the plain conditional EA, RLS, and oracle-guided RLS
//!   ([`algorithms`]);
//! - exact per-fitness strength oracles: OneMax drift maximizers,
//!   LeadingOnes improvement-probability maximizers, and the exact expected
//!   optimization time of table-driven (1+1) search ([`oracle`]);
//! - a batch harness with fixed-target logging, summary statistics, and
//!   CSV/JSON export ([`harness`], [`export`]).
//!
//! Everything is deterministic under a fixed master seed: run `i` of a batch
//! draws from ChaCha8 stream `i` of the seed, so batches reproduce exactly,
//! in parallel or not.
//!
//! ```
//! use normbit::{execute_batch, summarize, AlgorithmConfig, Problem, Variant};
//!
//! let cfg = AlgorithmConfig::new(Variant::Var).with_lambda(2);
//! let logs = execute_batch(&cfg, Problem::OneMax, 100, 10, 7).unwrap();
//! let stats = summarize(&logs, 100).unwrap();
//! assert_eq!(stats.count, 10);
//! assert!(stats.aht >= 1.0);
//! ```

pub mod algorithms;
pub mod bitstring;
mod error;
pub mod export;
pub mod fitness;
pub mod harness;
pub mod oracle;
pub mod sampling;

pub use algorithms::{
    run, run_with_table, AlgorithmConfig, EvalContext, OracleKind, SearchState, Variant,
};
pub use bitstring::BitString;
pub use error::{Error, Result};
pub use fitness::{leadingones, onemax, EvalCounter, Problem};
pub use harness::{
    execute_batch, fixed_target_curve, normalize_time, summarize, FixedTargetLog, SummaryStats,
};
pub use oracle::StrengthTable;
pub use sampling::{RandomSource, StrengthDistribution};
