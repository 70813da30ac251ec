//! Small exact-combinatorics helpers shared by the samplers and enumerators.

use num_bigint::{BigUint, RandBigInt};
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

pub fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * i)
}

/// Number of partial bijections of rank `i` on `d` points: `C(d,i)^2 * i!`.
pub fn rank_class_size(d: usize, i: usize) -> BigUint {
    let c = binomial(d, i);
    &c * &c * factorial(i)
}

/// Picks index `k` with probability `weights[k] / sum(weights)` by drawing a
/// uniform integer below the total and inverting the cumulative sums.
///
/// Panics if every weight is zero.
pub fn sample_weighted<R: Rng + ?Sized>(weights: &[BigUint], rng: &mut R) -> usize {
    let total: BigUint = weights.iter().sum();
    assert!(!total.is_zero(), "sample_weighted called with zero total weight");
    let mut ticket = rng.gen_biguint_below(&total);
    for (k, w) in weights.iter().enumerate() {
        if &ticket < w {
            return k;
        }
        ticket -= w;
    }
    unreachable!("ticket below total must land in some class")
}

/// Uniform `k`-subset of `0..n`, returned in ascending order.
pub fn sample_subset<R: Rng + ?Sized>(n: usize, k: usize, rng: &mut R) -> Vec<usize> {
    let mut s = rand::seq::index::sample(rng, n, k).into_vec();
    s.sort_unstable();
    s
}

/// Uniform injective sequence of length `k` drawn from `0..n`.
pub fn sample_arrangement<R: Rng + ?Sized>(n: usize, k: usize, rng: &mut R) -> Vec<usize> {
    let mut s = rand::seq::index::sample(rng, n, k).into_vec();
    s.shuffle(rng);
    s
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in start..n {
            if n - x < k - cur.len() {
                break;
            }
            cur.push(x);
            go(x + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        go(0, n, k, &mut Vec::with_capacity(k), &mut out);
    }
    out
}

/// All orderings of `items` (assumed sorted) in lexicographic order.
pub fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    let mut cur = items.to_vec();
    let mut out = vec![cur.clone()];
    // next-permutation
    while let Some(i) = (1..cur.len()).rev().find(|&i| cur[i - 1] < cur[i]) {
        let j = (i..cur.len()).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(cur.clone());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn small_values() {
        assert_eq!(binomial(5, 2), BigUint::from(10u32));
        assert_eq!(binomial(2, 3), BigUint::zero());
        assert_eq!(factorial(0), BigUint::one());
        assert_eq!(factorial(5), BigUint::from(120u32));
        let total: BigUint = (0..=3).map(|i| rank_class_size(3, i)).sum();
        assert_eq!(total, BigUint::from(34u32));
    }

    #[test]
    fn combinations_and_permutations_are_lexicographic() {
        assert_eq!(
            combinations(4, 2),
            vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]
        );
        assert_eq!(combinations(3, 0), vec![Vec::<usize>::new()]);
        assert!(combinations(2, 3).is_empty());
        let p = permutations(&[0, 1, 2]);
        assert_eq!(p.len(), 6);
        assert_eq!(p[0], vec![0, 1, 2]);
        assert_eq!(p[1], vec![0, 2, 1]);
        assert_eq!(p[5], vec![2, 1, 0]);
        assert_eq!(permutations(&[]), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn weighted_sampling_respects_zero_weights() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let w = [BigUint::zero(), BigUint::from(3u32), BigUint::zero()];
        for _ in 0..100 {
            assert_eq!(sample_weighted(&w, &mut rng), 1);
        }
    }

    #[test]
    fn subsets_are_sorted_and_distinct() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..100 {
            let s = sample_subset(6, 3, &mut rng);
            assert!(s.windows(2).all(|w| w[0] < w[1]));
            let a = sample_arrangement(6, 4, &mut rng);
            let mut b = a.clone();
            b.sort_unstable();
            b.dedup();
            assert_eq!(b.len(), 4);
        }
    }
}
