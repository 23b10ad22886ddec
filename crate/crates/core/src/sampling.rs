//! Seeded sampling of rational chart points.

use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::algebra::{rat, Rational};

/// Nonzero small-height values points are drawn from.
pub const VALUES: [(i64, i64); 14] = [
    (1, 1),
    (-1, 1),
    (2, 1),
    (-2, 1),
    (3, 1),
    (-3, 1),
    (1, 2),
    (-1, 2),
    (1, 3),
    (-1, 3),
    (2, 3),
    (-2, 3),
    (3, 2),
    (-3, 2),
];

/// Independent seed for the `index`-th sub-run (splitmix64 of the pair).
pub fn derive_seed(base: u64, index: u64) -> u64 {
    let mut z = base ^ index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    /// Uniform in `0..bound` (`bound > 0`).
    pub fn below(&mut self, bound: usize) -> usize {
        (self.rng.next_u64() % bound as u64) as usize
    }

    pub fn coin(&mut self, num: u32, den: u32) -> bool {
        (self.rng.next_u32() % den) < num
    }

    pub fn value(&mut self) -> Rational {
        let (a, b) = VALUES[self.below(VALUES.len())];
        rat(a, b)
    }

    /// `k` nonzero values.
    pub fn point(&mut self, k: usize) -> Vec<Rational> {
        (0..k).map(|_| self.value()).collect()
    }

    /// `k` values, each zeroed with probability `num/den`.
    pub fn point_with_zeros(&mut self, k: usize, num: u32, den: u32) -> Vec<Rational> {
        (0..k)
            .map(|_| {
                let v = self.value();
                if self.coin(num, den) {
                    rat(0, 1)
                } else {
                    v
                }
            })
            .collect()
    }

    /// Small nonzero integer in `[-bound, bound]`.
    pub fn small_int(&mut self, bound: i64) -> i64 {
        loop {
            let v = self.below((2 * bound + 1) as usize) as i64 - bound;
            if v != 0 {
                return v;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeded_streams_repeat() {
        let a = Sampler::new(7).point(20);
        let b = Sampler::new(7).point(20);
        assert_eq!(a, b);
        assert_ne!(a, Sampler::new(8).point(20));
        assert!(a.iter().all(|q| *q != rat(0, 1)));
    }
}
