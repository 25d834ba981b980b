//! Seeded pseudo-random generator for reproducible sampling.
//!
//! A 64-bit linear congruential generator with Knuth's MMIX constants:
//! `x ← 6364136223846793005·x + 1442695040888963407 (mod 2^64)`. Outputs are
//! the high 32 bits of the state. Range reduction is by modulo; the bias is
//! irrelevant at the ranges used here and keeps the stream trivially
//! reproducible in other languages.

use num_bigint::BigInt;

use crate::rational::Rational;

const MULTIPLIER: u64 = 6364136223846793005;
const INCREMENT: u64 = 1442695040888963407;

/// Largest denominator drawn by [`Lcg::rational_in`].
pub const MAX_DENOMINATOR: u64 = 64;

#[derive(Debug, Clone)]
pub struct Lcg {
    state: u64,
}

impl Lcg {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u32(&mut self) -> u32 {
        self.state = self
            .state
            .wrapping_mul(MULTIPLIER)
            .wrapping_add(INCREMENT);
        (self.state >> 32) as u32
    }

    /// Uniform-ish integer in `0..n`. Panics if `n == 0`.
    pub fn below(&mut self, n: u64) -> u64 {
        assert!(n > 0, "empty range");
        let hi = u64::from(self.next_u32());
        let lo = u64::from(self.next_u32());
        ((hi << 32) | lo) % n
    }

    /// Integer in the closed range `lo..=hi`.
    pub fn range_i64(&mut self, lo: i64, hi: i64) -> i64 {
        assert!(lo <= hi);
        lo + self.below((hi - lo) as u64 + 1) as i64
    }

    /// A rational `p/q` in `[lo, hi]` with `q` uniform in `1..=max_den`.
    pub fn rational_in(&mut self, lo: i64, hi: i64, max_den: u64) -> Rational {
        let den = self.range_i64(1, max_den as i64);
        let num = self.range_i64(lo * den, hi * den);
        Rational::new(BigInt::from(num), BigInt::from(den))
    }

    /// A rational in `(0, hi]` with denominator in `1..=max_den`.
    pub fn positive_rational(&mut self, hi: i64, max_den: u64) -> Rational {
        let den = self.range_i64(1, max_den as i64);
        let num = self.range_i64(1, hi * den);
        Rational::new(BigInt::from(num), BigInt::from(den))
    }
}
