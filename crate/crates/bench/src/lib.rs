//! Input generators shared by the benchmarks.

use flipcoins::CoinString;

/// Deterministic xorshift64* stream, so benchmark inputs are reproducible.
pub struct Rng(u64);

impl Rng {
    pub fn new(seed: u64) -> Self {
        Rng(seed.max(1))
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0 ^= self.0 << 13;
        self.0 ^= self.0 >> 7;
        self.0 ^= self.0 << 17;
        self.0.wrapping_mul(0x2545_f491_4f6c_dd1d)
    }

    pub fn next_bool(&mut self) -> bool {
        self.next_u64() & 1 == 1
    }
}

/// A pseudo-random position of exactly `len` coins (last coin tails).
pub fn random_position(len: usize, seed: u64) -> CoinString {
    let mut rng = Rng::new(seed);
    CoinString::from_bits((0..len).map(|i| i + 1 == len || rng.next_bool()))
}

/// A position that is already a reduction fixpoint and peels into `layers`
/// suffix layers; this exercises the decomposition and the ordinal-sum fold
/// at depth.
pub fn layered_position(layers: usize) -> CoinString {
    let mut bits = vec![false, true];
    for i in 0..layers {
        if i.is_multiple_of(2) {
            bits.extend([false, true, true]);
        } else {
            bits.extend([false, true, false, true]);
        }
    }
    CoinString::from_bits(bits)
}
