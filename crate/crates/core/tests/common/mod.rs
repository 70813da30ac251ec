#![allow(dead_code)]

use pawspec_core::{PartialBijection, TreePA};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// The two-level binary element whose action matrix is `{(1,3), (2,4)}`:
/// the top swaps the level-1 vertices, the subtree under vertex 1 is fixed
/// pointwise and vertex 2 keeps only itself.
pub fn example_element() -> TreePA {
    let swap: PartialBijection = "d=2: 1>2; 2>1".parse().unwrap();
    TreePA::new(
        swap,
        vec![Some(TreePA::identity(2, 1)), Some(TreePA::with_empty_top(2, 1))],
    )
    .unwrap()
}

pub const EXAMPLE_JSON: &str = r#"{"d":2,"n":2,"top":"1>2;2>1","children":{"1":{"d":2,"n":1,"top":"1>1;2>2","children":{"1":{"d":2,"n":0},"2":{"d":2,"n":0}}},"2":{"d":2,"n":1,"top":""}}}"#;

/// Dense integer product, independent of `ActionMatrix::product`.
pub fn dense_product(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    let mut c = vec![vec![0; n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k] != 0 {
                for j in 0..n {
                    c[i][j] += a[i][k] * b[k][j];
                }
            }
        }
    }
    c
}

/// Pearson statistic of observed counts against a uniform distribution.
pub fn chi_square_uniform(counts: &[u64]) -> f64 {
    let total: u64 = counts.iter().sum();
    let expected = total as f64 / counts.len() as f64;
    counts
        .iter()
        .map(|&c| (c as f64 - expected).powi(2) / expected)
        .sum()
}
