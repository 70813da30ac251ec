mod common;

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use pawspec_core::iscore::{self, PartialBijection};
use pawspec_core::xplab::{self, rational_to_f64};
use pawspec_core::wreath;
use statrs::distribution::{ChiSquared, ContinuousCDF};

use common::{chi_square_uniform, rng};

#[test]
fn isd_sampler_is_uniform_on_is2() {
    let all = iscore::enumerate_all(2).unwrap();
    let index: HashMap<&PartialBijection, usize> = all.iter().enumerate().map(|(i, f)| (f, i)).collect();
    let mut counts = vec![0u64; all.len()];
    let mut r = rng(41);
    for _ in 0..100_000 {
        counts[index[&iscore::sample_uniform(2, &mut r)]] += 1;
    }
    let critical = ChiSquared::new(6.0).unwrap().inverse_cdf(0.999);
    assert!(chi_square_uniform(&counts) < critical, "{counts:?}");
}

#[test]
fn monte_carlo_matches_small_exact_values() {
    for (n, expected) in [(1, (3, 7)), (2, (34, 127))] {
        let exact = BigRational::new(BigInt::from(expected.0), BigInt::from(expected.1));
        let stats = xplab::monte_carlo_xi(2, n, 100_000, 1234 + n as u64).unwrap();
        let target = rational_to_f64(&exact);
        assert!(
            (stats.mean_xi - target).abs() <= 3.0 * stats.stderr,
            "n={n}: {} vs {target} (se {})",
            stats.mean_xi,
            stats.stderr
        );
    }
}

#[test]
fn monte_carlo_agrees_with_exact_on_feasible_shapes() {
    let shapes = [(1, 1), (1, 3), (1, 5), (2, 1), (2, 2), (2, 3), (3, 1), (3, 2)];
    for (i, (d, n)) in shapes.into_iter().enumerate() {
        let exact = xplab::exact_expected_xi(d, n).unwrap();
        let target = rational_to_f64(&exact.expected_xi);
        assert!((0.0..=1.0).contains(&target));
        let stats = xplab::monte_carlo_xi(d, n, 20_000, 90 + i as u64).unwrap();
        assert!(
            (stats.mean_xi - target).abs() <= 4.0 * stats.stderr,
            "d={d} n={n}: {} vs {target} (se {})",
            stats.mean_xi,
            stats.stderr
        );
    }
}

#[test]
fn golden_expectations_from_independent_enumeration() {
    // brute force over all elements, survivors by fixed-point iteration
    let golden = [
        (1, 1, 1, 2),
        (1, 3, 1, 4),
        (2, 1, 3, 7),
        (2, 2, 34, 127),
        (2, 3, 5904, 32767),
        (3, 1, 13, 34),
        (3, 2, 53797, 256939),
    ];
    for (d, n, num, den) in golden {
        let exact = xplab::exact_expected_xi(d, n).unwrap();
        assert_eq!(
            exact.expected_xi,
            BigRational::new(BigInt::from(num), BigInt::from(den)),
            "d={d} n={n}"
        );
    }
}

#[test]
fn per_top_sums_add_up() {
    for (d, n) in [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (1, 4)] {
        let rows = xplab::exact_rn_by_top(d, n).unwrap();
        let total: num_bigint::BigUint = rows.iter().map(|r| &r.direct).sum();
        assert_eq!(total, xplab::exact_expected_xi(d, n).unwrap().rank_sum, "d={d} n={n}");
        assert!(rows.iter().all(|r| r.direct == r.formula));
    }
}

#[test]
fn output_does_not_depend_on_thread_count() {
    let run = |threads| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| xplab::convergence_table(2, 4, 300, 5).unwrap().to_csv())
    };
    assert_eq!(run(1), run(4));
}

#[test]
fn sampled_trees_have_the_requested_shape() {
    let mut r = rng(9);
    for (d, n) in [(1, 6), (2, 5), (4, 3)] {
        for _ in 0..50 {
            let y = wreath::sample_uniform_tree(d, n, &mut r);
            assert_eq!((y.degree(), y.level()), (d, n));
        }
    }
}
