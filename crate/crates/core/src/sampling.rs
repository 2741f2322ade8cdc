//! Mutation-strength distributions and the seeded random source.
//!
//! Strengths are always in `[1, n]`; distributions that can produce zero are
//! conditioned on being positive by re-sampling. Rounding of real-valued
//! draws is to the nearest integer, half away from zero.

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution, Normal};

use crate::error::{Error, Result};

/// Seeded random source used by every run.
///
/// The generator family is ChaCha8 and is version-pinned via `rand_chacha`;
/// identical seeds produce bit-identical sample streams. Independent runs of
/// a batch use [`RandomSource::child`], which selects ChaCha stream `i` of
/// the master seed, so run `i` is a pure function of `(seed, i)` regardless
/// of scheduling.
#[derive(Clone, Debug)]
pub struct RandomSource {
    seed: u64,
    stream: u64,
    rng: ChaCha8Rng,
}

impl RandomSource {
    /// Master source for `seed` (stream 0).
    pub fn from_seed(seed: u64) -> Self {
        RandomSource {
            seed,
            stream: 0,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// Independent child source for run `index` under `master_seed`.
    pub fn child(master_seed: u64, index: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
        rng.set_stream(index);
        RandomSource {
            seed: master_seed,
            stream: index,
            rng,
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream(&self) -> u64 {
        self.stream
    }
}

impl RngCore for RandomSource {
    fn next_u32(&mut self) -> u32 {
        self.rng.next_u32()
    }

    fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }

    fn fill_bytes(&mut self, dest: &mut [u8]) {
        self.rng.fill_bytes(dest)
    }
}

/// Draws from `Bin(n, p)` conditioned on the outcome being at least 1, i.e.
/// with mass `C(n,k) p^k (1-p)^(n-k) / (1 - (1-p)^n)` at `k` in `[1, n]`.
///
/// Zero outcomes are re-sampled. When the zero mass exceeds 1/2 (tiny `p`,
/// as produced by the uniform-rate distribution) the re-sampling loop is
/// replaced by an exact equivalent: draw the position of the first flipped
/// bit from the truncated geometric distribution, then add a binomial count
/// for the remaining positions. Rates above 1 are clamped to 1 by callers;
/// this function treats them as 1.
pub fn sample_cond_binomial<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Result<usize> {
    if n == 0 {
        return Err(Error::InvalidDimension);
    }
    if p <= 0.0 || p.is_nan() {
        return Err(Error::InvalidRate(p));
    }
    if p >= 1.0 {
        return Ok(n);
    }
    let ln_q = (-p).ln_1p(); // ln(1-p)
    let zero_mass = (n as f64 * ln_q).exp(); // (1-p)^n
    if zero_mass <= 0.5 {
        let dist = Binomial::new(n as u64, p).expect("rate validated");
        loop {
            let k = dist.sample(rng) as usize;
            if k >= 1 {
                return Ok(k);
            }
        }
    }
    // First flipped index J has P(J = j) = (1-p)^(j-1) p / (1 - (1-p)^n);
    // the positions after J flip independently with rate p.
    let positive_mass = -(n as f64 * ln_q).exp_m1(); // 1 - (1-p)^n
    let u: f64 = rng.random();
    let j = ((-(u * positive_mass)).ln_1p() / ln_q).ceil() as usize;
    let j = j.clamp(1, n);
    let rest = Binomial::new((n - j) as u64, p).expect("rate validated");
    Ok(1 + rest.sample(rng) as usize)
}

/// Draws from the zero-truncated normal: `g ~ Normal(mean, variance)`
/// conditioned on `g >= 0` (negative draws are re-sampled), rounded to the
/// nearest integer (half away from zero), lifted to at least 1 and capped at
/// `n`. With `variance = 0` the draw is deterministic: `round(mean)` clamped
/// into `[1, n]`.
pub fn sample_cond_normal<R: Rng + ?Sized>(
    mean: f64,
    variance: f64,
    n: usize,
    rng: &mut R,
) -> Result<usize> {
    if n == 0 {
        return Err(Error::InvalidDimension);
    }
    if !mean.is_finite() {
        return Err(Error::Domain(format!("mean must be finite, got {mean}")));
    }
    if variance < 0.0 || !variance.is_finite() {
        return Err(Error::InvalidVariance(variance));
    }
    if variance == 0.0 {
        let k = mean.round().max(1.0).min(n as f64);
        return Ok(k as usize);
    }
    let sd = variance.sqrt();
    if mean / sd < -8.0 {
        // the conditioned distribution is squeezed against zero and rounds
        // to 1 up to ~1e-15 mass; re-sampling would effectively never accept
        return Ok(1);
    }
    let normal = Normal::new(mean, sd).expect("parameters validated");
    loop {
        let g = normal.sample(rng);
        if g >= 0.0 {
            return Ok(g.round().max(1.0).min(n as f64) as usize);
        }
    }
}

/// Draws a mutation rate uniformly from the open interval `(0, sigma*r/n)`,
/// clamped at 1. Exact-zero draws are rejected so the rate is always
/// strictly positive.
pub fn sample_uniform_rate<R: Rng + ?Sized>(sigma: f64, r: usize, n: usize, rng: &mut R) -> f64 {
    assert!(sigma > 0.0, "sigma must be strictly positive");
    assert!(r >= 1 && n >= 1, "strength and dimension must be at least 1");
    let hi = sigma * r as f64 / n as f64;
    loop {
        let p = rng.random_range(0.0..hi);
        if p > 0.0 {
            return p.min(1.0);
        }
    }
}

/// How the mutation strength of an offspring is drawn. Every sample lies in
/// `[1, n]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum StrengthDistribution {
    /// Always `strength`; the caller keeps it within `[1, n]`.
    Deterministic { strength: usize },
    /// `Bin(n, rate)` conditioned on being positive.
    CondBinomial { n: usize, rate: f64 },
    /// `Normal(mean, variance)` conditioned on being non-negative, rounded
    /// to the nearest integer, lifted to at least 1 and capped at `n`.
    CondNormal { mean: f64, variance: f64, n: usize },
    /// A fresh rate `p ~ min(U(0, sigma*strength/n), 1)` per sample, then
    /// `Bin(n, p)` conditioned on being positive.
    UniformRate { sigma: f64, strength: usize, n: usize },
}

impl StrengthDistribution {
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<usize> {
        match *self {
            StrengthDistribution::Deterministic { strength } => Ok(strength),
            StrengthDistribution::CondBinomial { n, rate } => sample_cond_binomial(n, rate, rng),
            StrengthDistribution::CondNormal { mean, variance, n } => {
                sample_cond_normal(mean, variance, n, rng)
            }
            StrengthDistribution::UniformRate { sigma, strength, n } => {
                let p = sample_uniform_rate(sigma, strength, n, rng);
                sample_cond_binomial(n, p, rng)
            }
        }
    }
}
