//! Deterministic randomness.
//!
//! Every randomized component in the crate draws from [`Rng`], a thin wrapper
//! around ChaCha8 keyed from a single `u64` seed. The wrapper pins down the
//! exact derivation so that reports and sampled checks are reproducible
//! byte-for-byte across runs, platforms, and thread counts.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

/// SplitMix64 output mix. Used for key expansion and per-trial seed
/// derivation; the full generator state never leaves this module.
fn splitmix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

/// Derives the seed for trial `t` of a multi-trial run. Distinct trials get
/// decorrelated streams while the whole sweep stays reproducible from one
/// base seed.
pub fn trial_seed(base: u64, trial: u64) -> u64 {
    splitmix64(base.wrapping_add(trial.wrapping_add(1).wrapping_mul(GOLDEN)))
}

/// Seeded generator with the handful of draw shapes the crate needs.
#[derive(Debug, Clone)]
pub struct Rng {
    inner: ChaCha8Rng,
}

impl Rng {
    /// Expands the `u64` seed into a 256-bit ChaCha key via four SplitMix64
    /// steps, so nearby seeds (0, 1, 2, ..) still produce unrelated streams.
    pub fn from_seed(seed: u64) -> Self {
        let mut key = [0u8; 32];
        let mut state = seed;
        for chunk in key.chunks_exact_mut(8) {
            state = state.wrapping_add(GOLDEN);
            chunk.copy_from_slice(&splitmix64(state).to_le_bytes());
        }
        Rng {
            inner: ChaCha8Rng::from_seed(key),
        }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    /// Uniform draw from `[0, bound)`, bias-free via tail rejection.
    pub fn below(&mut self, bound: usize) -> usize {
        debug_assert!(bound > 0);
        let bound = bound as u64;
        // 2^64 mod bound values at the top of the range would over-represent
        // small residues; reroll when we land there.
        let overhang = (u64::MAX % bound + 1) % bound;
        let limit = u64::MAX - overhang;
        loop {
            let x = self.next_u64();
            if x <= limit {
                return (x % bound) as usize;
            }
        }
    }

    /// Uniform draw from `[0, 1)` with the full 53 bits of f64 precision.
    pub fn unit_f64(&mut self) -> f64 {
        const SCALE: f64 = 1.0 / (1u64 << 53) as f64;
        (self.next_u64() >> 11) as f64 * SCALE
    }

    /// Partial Fisher-Yates: after the call, `pool[..t]` holds a uniform
    /// random `t`-subset of the original slice (in random order) and the
    /// remaining elements sit in `pool[t..]`.
    pub fn sample_prefix(&mut self, pool: &mut [usize], t: usize) {
        debug_assert!(t <= pool.len());
        for i in 0..t {
            let j = i + self.below(pool.len() - i);
            pool.swap(i, j);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    // Frozen streams: if any of these change, every stored report and golden
    // file in the workspace silently changes meaning. Update them only
    // together with a deliberate compatibility break.
    #[test]
    fn seed_zero_stream_is_stable() {
        let mut rng = Rng::from_seed(0);
        let got: Vec<u64> = (0..4).map(|_| rng.next_u64()).collect();
        assert_eq!(
            got,
            vec![
                13804888775535289832,
                4211859015901796865,
                4415496932110364166,
                1713244878998487631,
            ]
        );
    }

    #[test]
    fn trial_seeds_are_distinct() {
        let seeds: Vec<u64> = (0..100).map(|t| trial_seed(7, t)).collect();
        let unique: std::collections::HashSet<_> = seeds.iter().collect();
        assert_eq!(unique.len(), seeds.len());
        assert_ne!(trial_seed(7, 0), trial_seed(8, 0));
    }

    #[test]
    fn below_is_in_range_and_hits_all_values() {
        let mut rng = Rng::from_seed(42);
        let mut seen = [false; 7];
        for _ in 0..1000 {
            seen[rng.below(7)] = true;
        }
        assert!(seen.iter().all(|&b| b));
        assert_eq!(rng.below(1), 0);
    }

    #[test]
    fn unit_f64_in_half_open_interval() {
        let mut rng = Rng::from_seed(3);
        for _ in 0..1000 {
            let x = rng.unit_f64();
            assert!((0.0..1.0).contains(&x));
        }
    }

    #[test]
    fn sample_prefix_is_a_permutation_prefix() {
        let mut rng = Rng::from_seed(11);
        let original: Vec<usize> = (0..20).collect();
        let mut pool = original.clone();
        rng.sample_prefix(&mut pool, 8);
        let mut sorted = pool.clone();
        sorted.sort_unstable();
        assert_eq!(sorted, original);
        let distinct: std::collections::HashSet<_> = pool[..8].iter().collect();
        assert_eq!(distinct.len(), 8);
    }

    #[test]
    fn sample_prefix_full_length_is_shuffle() {
        let mut rng = Rng::from_seed(5);
        let mut pool: Vec<usize> = (0..10).collect();
        rng.sample_prefix(&mut pool, 10);
        let mut sorted = pool.clone();
        sorted.sort_unstable();
        assert_eq!(sorted, (0..10).collect::<Vec<_>>());
    }
}
