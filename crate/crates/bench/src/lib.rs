//! Deterministic inputs shared by the benchmarks.

use absq_core::{Alphabet, Word};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Uniform word of length `len` over `k` letters, fixed by `seed`.
pub fn random_word(len: usize, k: usize, seed: u64) -> Word {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let symbols = (0..len).map(|_| rng.random_range(1..=k as u32)).collect();
    Word::new(symbols, Alphabet::new(k).expect("k >= 1")).expect("letters drawn in range")
}
