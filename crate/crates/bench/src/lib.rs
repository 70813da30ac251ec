//! Fixtures shared by the benchmarks.

use pawspec_core::{CountTable, TreePA};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// `count` uniform elements of `P_n`, reproducible from `seed`.
pub fn seeded_samples(degree: usize, level: usize, count: usize, seed: u64) -> Vec<TreePA> {
    let table = CountTable::new(degree, level);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| table.sample(level, &mut rng)).collect()
}
