//! Fixed-length bit strings and the `l`-bit mutation operator.
//!
//! Bits are packed into `u64` words so that fitness evaluation is a handful
//! of popcount/trailing-ones instructions even at `n = 10^4`. Padding bits
//! beyond the logical length are kept at zero at all times.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use rand::Rng;

use crate::error::{Error, Result};

/// Up to this many flips the distinct positions are drawn by rejection on a
/// stack buffer; above it a Floyd sample into a hash set is cheaper.
const REJECTION_LIMIT: usize = 16;

/// A fixed-length binary search point.
///
/// The length is set at construction and never changes. Position `0` is the
/// leftmost character in the textual form, i.e. `"110"` has a leading-ones
/// prefix of length 2.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitString {
    words: Vec<u64>,
    len: usize,
}

impl BitString {
    /// All-zeros string of length `n`.
    pub fn zeros(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidDimension);
        }
        Ok(BitString {
            words: vec![0; n.div_ceil(64)],
            len: n,
        })
    }

    /// Samples a string of length `n` uniformly at random: every bit is 0 or
    /// 1 independently with probability 1/2.
    pub fn new_uniform<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<Self> {
        let mut s = Self::zeros(n)?;
        for w in &mut s.words {
            *w = rng.random();
        }
        s.mask_padding();
        Ok(s)
    }

    fn mask_padding(&mut self) {
        let rem = self.len % 64;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    /// Number of bits.
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Value of bit `i`.
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit index {i} out of range for length {}", self.len);
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    /// Flips bit `i` in place.
    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "bit index {i} out of range for length {}", self.len);
        self.words[i / 64] ^= 1u64 << (i % 64);
    }

    /// Number of one-bits.
    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Length of the maximal all-ones prefix.
    pub fn leading_ones(&self) -> usize {
        let mut total = 0;
        for &w in &self.words {
            if w == u64::MAX {
                total += 64;
            } else {
                total += w.trailing_ones() as usize;
                break;
            }
        }
        total.min(self.len)
    }

    /// Returns a copy with exactly `strength` distinct, uniformly chosen
    /// positions flipped: the offspring is at Hamming distance `strength`
    /// from `self` and every position subset of that size is equally likely.
    pub fn mutate<R: Rng + ?Sized>(&self, strength: usize, rng: &mut R) -> Result<BitString> {
        let mut child = self.clone();
        child.flip_uniform_subset(strength, rng)?;
        Ok(child)
    }

    /// In-place variant of [`mutate`](Self::mutate) for callers that reuse
    /// offspring buffers.
    pub fn flip_uniform_subset<R: Rng + ?Sized>(&mut self, strength: usize, rng: &mut R) -> Result<()> {
        let n = self.len;
        if strength < 1 || strength > n {
            return Err(Error::InvalidStrength { strength, n });
        }
        if strength <= REJECTION_LIMIT {
            let mut chosen = [0usize; REJECTION_LIMIT];
            for k in 0..strength {
                let pos = loop {
                    let p = rng.random_range(0..n);
                    if !chosen[..k].contains(&p) {
                        break p;
                    }
                };
                chosen[k] = pos;
                self.flip(pos);
            }
        } else {
            // Floyd's subset sampling: one accepted draw per element.
            let mut chosen = HashSet::with_capacity(strength);
            for j in (n - strength)..n {
                let t = rng.random_range(0..=j);
                if !chosen.insert(t) {
                    chosen.insert(j);
                }
            }
            for pos in chosen {
                self.flip(pos);
            }
        }
        Ok(())
    }

    /// Hamming distance; errors if the lengths differ.
    pub fn hamming(&self, other: &BitString) -> Result<usize> {
        if self.len != other.len {
            return Err(Error::LengthMismatch {
                left: self.len,
                right: other.len,
            });
        }
        Ok(self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a ^ b).count_ones() as usize)
            .sum())
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitString({self})")
    }
}

impl FromStr for BitString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut bits = BitString::zeros(s.len())?;
        for (i, c) in s.chars().enumerate() {
            match c {
                '0' => {}
                '1' => bits.flip(i),
                _ => return Err(Error::Domain(format!("invalid bit character {c:?}"))),
            }
        }
        Ok(bits)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::RandomSource;

    fn bs(s: &str) -> BitString {
        s.parse().unwrap()
    }

    #[test]
    fn zero_dimension_is_rejected() {
        assert_eq!(BitString::zeros(0).unwrap_err(), Error::InvalidDimension);
        let mut rng = RandomSource::from_seed(1);
        assert!(BitString::new_uniform(0, &mut rng).is_err());
    }

    #[test]
    fn uniform_length_one_is_fair() {
        let mut rng = RandomSource::from_seed(7);
        let mut ones = 0;
        for _ in 0..10_000 {
            if BitString::new_uniform(1, &mut rng).unwrap().get(0) {
                ones += 1;
            }
        }
        // 5 standard errors around 5000
        assert!((ones - 5000i64).abs() < 250, "ones = {ones}");
    }

    #[test]
    fn mutate_flips_all_bits_at_full_strength() {
        let mut rng = RandomSource::from_seed(3);
        let x = bs("000");
        let y = x.mutate(3, &mut rng).unwrap();
        assert_eq!(y.to_string(), "111");
    }

    #[test]
    fn mutate_strength_one_is_uniform_over_positions() {
        let mut rng = RandomSource::from_seed(11);
        let x = bs("0000");
        let mut counts = [0u32; 4];
        let samples = 40_000;
        for _ in 0..samples {
            let y = x.mutate(1, &mut rng).unwrap();
            let pos = (0..4).find(|&i| y.get(i)).unwrap();
            counts[pos] += 1;
        }
        // each position with probability 1/4; 5 SE = 5*sqrt(0.25*0.75*N)
        let se = (0.25f64 * 0.75 * samples as f64).sqrt();
        for c in counts {
            assert!((c as f64 - samples as f64 / 4.0).abs() < 5.0 * se, "counts = {counts:?}");
        }
    }

    #[test]
    fn mutate_rejects_out_of_range_strengths() {
        let mut rng = RandomSource::from_seed(1);
        let x = bs("0000");
        assert!(matches!(x.mutate(0, &mut rng), Err(Error::InvalidStrength { .. })));
        assert!(matches!(x.mutate(5, &mut rng), Err(Error::InvalidStrength { .. })));
    }

    #[test]
    fn mutate_large_strength_hits_exact_hamming_distance() {
        let mut rng = RandomSource::from_seed(42);
        let x = BitString::new_uniform(301, &mut rng).unwrap();
        for strength in [1, 17, 150, 300, 301] {
            let y = x.mutate(strength, &mut rng).unwrap();
            assert_eq!(x.hamming(&y).unwrap(), strength);
        }
    }

    #[test]
    fn per_bit_flip_frequency_matches_strength_over_n() {
        let mut rng = RandomSource::from_seed(5);
        let n = 20;
        let strength = 3;
        let x = BitString::zeros(n).unwrap();
        let samples = 100_000usize;
        let mut flips = vec![0u32; n];
        for _ in 0..samples {
            let y = x.mutate(strength, &mut rng).unwrap();
            for (i, f) in flips.iter_mut().enumerate() {
                if y.get(i) {
                    *f += 1;
                }
            }
        }
        let p = strength as f64 / n as f64;
        let se = (p * (1.0 - p) / samples as f64).sqrt();
        for &f in &flips {
            let freq = f as f64 / samples as f64;
            assert!((freq - p).abs() < 5.0 * se, "freq = {freq}, expected {p}");
        }
    }

    #[test]
    fn hamming_examples() {
        assert_eq!(bs("1010").hamming(&bs("1010")).unwrap(), 0);
        assert_eq!(bs("1010").hamming(&bs("0101")).unwrap(), 4);
        assert_eq!(bs("110").hamming(&bs("100")).unwrap(), 1);
        assert!(matches!(
            bs("110").hamming(&bs("1100")),
            Err(Error::LengthMismatch { left: 3, right: 4 })
        ));
    }

    #[test]
    fn display_round_trips() {
        let s = "100101110001";
        assert_eq!(bs(s).to_string(), s);
    }

    #[test]
    fn padding_stays_clear_across_word_boundaries() {
        let mut rng = RandomSource::from_seed(9);
        for n in [63, 64, 65, 128, 130] {
            let x = BitString::new_uniform(n, &mut rng).unwrap();
            assert!(x.count_ones() <= n);
            let y = x.mutate(n, &mut rng).unwrap();
            assert_eq!(x.hamming(&y).unwrap(), n);
            assert_eq!(x.count_ones() + y.count_ones(), n);
        }
    }
}
