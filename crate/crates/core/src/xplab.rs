//! Experiments: exact expectations by enumeration, the per-top decomposition
//! of `R_n` and its bound, seeded Monte Carlo estimates of `E ξ_n` and the
//! level-to-level convergence table.
//!
//! "Random element" always means the uniform distribution on `P_n`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::iscore::{self, PartialBijection};
use crate::spectrum::{self, TestFunction};
use crate::wreath::{self, CountTable, TreePA};

/// Monte Carlo trials evaluate the full spectral measure up to this many leaves.
pub const SPECTRUM_LEAF_LIMIT: usize = 4096;

/// CSV header shared by `montecarlo` and `converge` output.
pub const CSV_HEADER: &str = "d,n,trials,seed,mean_xi,stderr,ratio,ratio_bound,pass";

fn big_rational(n: &BigUint) -> BigRational {
    BigRational::from_integer(BigInt::from(n.clone()))
}

/// Exact `N_n`, `R_n = Σ rk(y)` and `E ξ_n = R_n / (d^n N_n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactTable {
    pub degree: usize,
    pub level: usize,
    pub count: BigUint,
    pub rank_sum: BigUint,
    pub expected_xi: BigRational,
}

pub fn exact_expected_xi(degree: usize, level: usize) -> Result<ExactTable> {
    let all = wreath::enumerate_tree(degree, level)?;
    let rank_sum: u64 = all.par_iter().map(TreePA::ultimate_rank).sum();
    let count = BigUint::from(all.len());
    let leaves = BigUint::from(degree).pow(level as u32);
    let expected_xi = BigRational::new(
        BigInt::from(rank_sum),
        BigInt::from(&leaves * &count),
    );
    Ok(ExactTable {
        degree,
        level,
        count,
        rank_sum: BigUint::from(rank_sum),
        expected_xi,
    })
}

/// `R_n(a)` for one top map, computed two independent ways.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TopClassSum {
    pub top: PartialBijection,
    /// Σ rk(y) over the enumerated elements with top `a`.
    pub direct: BigUint,
    /// Σ over top cycles of `c · N_{n-1}^{rank(a)-c} · Σ_{y₁..y_c} rk(y₁⋯y_c)`.
    pub formula: BigUint,
}

/// `Σ_{y₁,…,y_c ∈ P_{n-1}} rk(y₁⋯y_c)` for `c = 1..=d`, by enumeration of tuples.
fn cycle_product_rank_sums(prev: &[TreePA], degree: usize) -> Vec<BigUint> {
    let mut sums = vec![BigUint::zero()];
    // products of all c-tuples, kept as a flat list and extended one factor at a time
    let mut products: Vec<TreePA> = prev.to_vec();
    for c in 1..=degree {
        if c > 1 {
            products = products
                .par_iter()
                .flat_map_iter(|p| prev.iter().map(move |q| p.compose(q).expect("same shape")))
                .collect();
        }
        let total: u64 = products.par_iter().map(TreePA::ultimate_rank).sum();
        sums.push(BigUint::from(total));
    }
    sums
}

/// Per-top decomposition `R_n = Σ_a R_n(a)`, with each `R_n(a)` checked
/// against the cycle-product formula. Any disagreement is an error.
pub fn exact_rn_by_top(degree: usize, level: usize) -> Result<Vec<TopClassSum>> {
    if level == 0 {
        return Err(Error::InvalidTree("level 0 has no top map".into()));
    }
    let all = wreath::enumerate_tree(degree, level)?;
    let prev = wreath::enumerate_tree(degree, level - 1)?;
    let prev_count = BigUint::from(prev.len());
    let cycle_sums = cycle_product_rank_sums(&prev, degree);

    let mut direct: BTreeMap<PartialBijection, u64> = BTreeMap::new();
    for y in &all {
        let top = y.top().expect("level >= 1").clone();
        *direct.entry(top).or_default() += y.ultimate_rank();
    }

    let mut out = Vec::with_capacity(direct.len());
    let mut total = BigUint::zero();
    for top in iscore::enumerate_all(degree)? {
        let rank = top.rank();
        let formula: BigUint = top
            .decompose()
            .cycle_lengths()
            .into_iter()
            .map(|c| BigUint::from(c) * prev_count.pow((rank - c) as u32) * &cycle_sums[c])
            .sum();
        let direct = BigUint::from(direct.get(&top).copied().unwrap_or(0));
        if direct != formula {
            return Err(Error::Invariant(format!(
                "R_{level}({top}) by enumeration is {direct}, by cycle products {formula}"
            )));
        }
        total += &direct;
        out.push(TopClassSum {
            top,
            direct,
            formula,
        });
    }
    let rank_sum: u64 = all.iter().map(TreePA::ultimate_rank).sum();
    if total != BigUint::from(rank_sum) {
        return Err(Error::Invariant(format!(
            "per-top sums add to {total}, R_{level} is {rank_sum}"
        )));
    }
    Ok(out)
}

/// One top map of the per-top bound check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lemma1Row {
    pub top: PartialBijection,
    pub value: BigUint,
    /// `R_{n-1} (N_{n-1}/d)^{rank(a)-1} rank(a)`.
    pub bound: BigRational,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lemma1Report {
    pub degree: usize,
    pub level: usize,
    pub rows: Vec<Lemma1Row>,
}

impl Lemma1Report {
    pub fn violations(&self) -> impl Iterator<Item = &Lemma1Row> {
        self.rows.iter().filter(|r| !r.holds)
    }

    pub fn all_hold(&self) -> bool {
        self.rows.iter().all(|r| r.holds)
    }
}

/// Evaluates `R_n(a) ≤ R_{n-1} (N_{n-1}/d)^{rank(a)-1} rank(a)` for every
/// top `a`, exactly. The inequality is stated for `n ≥ 2`.
pub fn check_lemma1(degree: usize, level: usize) -> Result<Lemma1Report> {
    if level < 2 {
        return Err(Error::InvalidTree(format!(
            "the per-top bound is stated for levels >= 2, got {level}"
        )));
    }
    let by_top = exact_rn_by_top(degree, level)?;
    let prev = exact_expected_xi(degree, level - 1)?;
    let r_prev = big_rational(&prev.rank_sum);
    let scale = BigRational::new(BigInt::from(prev.count.clone()), BigInt::from(degree));
    let rows = by_top
        .into_iter()
        .map(|t| {
            let rank = t.top.rank();
            let bound = if rank == 0 {
                BigRational::zero()
            } else {
                &r_prev * num_traits::pow(scale.clone(), rank - 1) * BigRational::from_integer(BigInt::from(rank))
            };
            let holds = big_rational(&t.direct) <= bound;
            Lemma1Row {
                top: t.top,
                value: t.direct,
                bound,
                holds,
            }
        })
        .collect();
    Ok(Lemma1Report {
        degree,
        level,
        rows,
    })
}

/// `r_n = (1/(d N_n)) Σ_a N_{n-1}^{rank a} rank(a) / d^{rank(a)-1}`, the
/// count-only factor proposed as a bound on `E ξ_n / E ξ_{n-1}`. Always at
/// most `1/d`; compare with the exact and sampled ratios.
pub fn lemma2_factor(table: &CountTable, level: usize) -> BigRational {
    assert!(level >= 1 && level <= table.max_level());
    let d = table.degree();
    let weights = table.rank_weights(level);
    let mut sum = BigRational::zero();
    for (rank, w) in weights.iter().enumerate().skip(1) {
        // w = |{a : rank a = i}| · N_{n-1}^i
        let term = big_rational(w) * BigRational::from_integer(BigInt::from(rank))
            / BigRational::from_integer(BigInt::from(d).pow(rank as u32 - 1));
        sum += term;
    }
    sum / (big_rational(table.count(level)) * BigRational::from_integer(BigInt::from(d)))
}

/// `Σ_{y ∈ P_n} leaf_rank(y)` by enumeration.
pub fn leaf_rank_total(degree: usize, level: usize) -> Result<BigUint> {
    let all = wreath::enumerate_tree(degree, level)?;
    Ok(BigUint::from(all.iter().map(TreePA::leaf_rank).sum::<u64>()))
}

/// Summary of a Monte Carlo run.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TrialStats {
    pub degree: usize,
    pub level: usize,
    pub trials: u64,
    pub seed: u64,
    pub mean_xi: f64,
    /// Sample standard deviation of ξ over `√trials`.
    pub stderr: f64,
    pub mean_integrals: BTreeMap<String, f64>,
}

struct TrialOutcome {
    xi: f64,
    integrals: Vec<(String, f64)>,
}

/// Rng stream for one trial; depends only on `(seed, trial)`.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

fn run_trial(table: &CountTable, level: usize, seed: u64, trial: u64) -> TrialOutcome {
    let mut rng = trial_rng(seed, trial);
    let y = table.sample(level, &mut rng);
    let leaves = (table.degree() as f64).powi(level as i32);
    let xi = y.ultimate_rank() as f64 / leaves;
    let small = y.num_leaves().is_some_and(|l| l <= SPECTRUM_LEAF_LIMIT);
    let integrals = if small {
        let summary = spectrum::structural_spectrum(&y).expect("leaf count within limit");
        let measure = spectrum::measure_from_summary(&summary);
        TestFunction::STANDARD
            .iter()
            .map(|f| (f.name(), spectrum::integrate(f, &measure).re))
            .collect()
    } else {
        vec![
            (TestFunction::Constant(1.0).name(), 1.0),
            (TestFunction::AbsSquared.name(), xi),
        ]
    };
    TrialOutcome { xi, integrals }
}

/// Estimates `E ξ_n` from `trials` uniform samples. Trials run in parallel;
/// the result depends only on `(degree, level, trials, seed)`.
pub fn monte_carlo_xi(degree: usize, level: usize, trials: u64, seed: u64) -> Result<TrialStats> {
    if trials == 0 {
        return Err(Error::InvalidTree("at least one trial is required".into()));
    }
    if degree == 0 {
        return Err(Error::ZeroDegree);
    }
    let table = CountTable::new(degree, level);
    let outcomes: Vec<TrialOutcome> = (0..trials)
        .into_par_iter()
        .map(|t| run_trial(&table, level, seed, t))
        .collect();

    let count = trials as f64;
    let mean_xi = outcomes.iter().map(|o| o.xi).sum::<f64>() / count;
    let stderr = if trials > 1 {
        let var = outcomes.iter().map(|o| (o.xi - mean_xi).powi(2)).sum::<f64>() / (count - 1.0);
        (var / count).sqrt()
    } else {
        0.0
    };
    let mut sums: BTreeMap<String, f64> = BTreeMap::new();
    for o in &outcomes {
        for (name, v) in &o.integrals {
            *sums.entry(name.clone()).or_default() += v;
        }
    }
    let mean_integrals = sums.into_iter().map(|(k, v)| (k, v / count)).collect();
    Ok(TrialStats {
        degree,
        level,
        trials,
        seed,
        mean_xi,
        stderr,
        mean_integrals,
    })
}

impl TrialStats {
    /// One CSV row with empty ratio columns.
    pub fn to_csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},,,",
            self.degree, self.level, self.trials, self.seed, self.mean_xi, self.stderr
        )
    }

    pub fn to_csv(&self) -> String {
        format!("{CSV_HEADER}\n{}\n", self.to_csv_row())
    }
}

/// Seed used for level `n` of a convergence table, so that levels draw
/// from unrelated streams.
pub fn level_seed(seed: u64, level: usize) -> u64 {
    seed ^ (level as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConvergenceRow {
    pub stats: TrialStats,
    /// `mean_xi(n) / mean_xi(n-1)`, absent on the first row.
    pub ratio: Option<f64>,
    /// Delta-method standard error of the ratio.
    pub ratio_stderr: Option<f64>,
    /// `1/d + 3 · ratio_stderr`.
    pub ratio_bound: Option<f64>,
    pub pass: Option<bool>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConvergenceTable {
    pub degree: usize,
    pub seed: u64,
    pub rows: Vec<ConvergenceRow>,
}

pub fn convergence_table(degree: usize, max_level: usize, trials: u64, seed: u64) -> Result<ConvergenceTable> {
    let mut rows: Vec<ConvergenceRow> = Vec::with_capacity(max_level);
    for level in 1..=max_level {
        let stats = monte_carlo_xi(degree, level, trials, level_seed(seed, level))?;
        let (ratio, ratio_stderr, ratio_bound, pass) = match rows.last() {
            Some(prev) if prev.stats.mean_xi > 0.0 => {
                let (m0, s0) = (prev.stats.mean_xi, prev.stats.stderr);
                let (m1, s1) = (stats.mean_xi, stats.stderr);
                let ratio = m1 / m0;
                let se = if m1 > 0.0 {
                    ratio * ((s1 / m1).powi(2) + (s0 / m0).powi(2)).sqrt()
                } else {
                    0.0
                };
                let bound = 1.0 / degree as f64 + 3.0 * se;
                (Some(ratio), Some(se), Some(bound), Some(ratio <= bound))
            }
            _ => (None, None, None, None),
        };
        rows.push(ConvergenceRow {
            stats,
            ratio,
            ratio_stderr,
            ratio_bound,
            pass,
        });
    }
    Ok(ConvergenceTable { degree, seed, rows })
}

impl ConvergenceTable {
    pub fn mean_strictly_decreasing(&self) -> bool {
        self.rows
            .windows(2)
            .all(|w| w[1].stats.mean_xi < w[0].stats.mean_xi)
    }

    pub fn all_flagged_pass(&self) -> bool {
        self.rows.iter().all(|r| r.pass != Some(false))
    }

    pub fn to_csv(&self) -> String {
        let opt = |v: Option<f64>| v.map(|v| v.to_string()).unwrap_or_default();
        let mut out = format!("{CSV_HEADER}\n");
        for r in &self.rows {
            let s = &r.stats;
            writeln!(
                out,
                "{},{},{},{},{},{},{},{},{}",
                s.degree,
                s.level,
                s.trials,
                self.seed,
                s.mean_xi,
                s.stderr,
                opt(r.ratio),
                opt(r.ratio_bound),
                r.pass.map(|p| p.to_string()).unwrap_or_default()
            )
            .unwrap();
        }
        out
    }
}

/// Verification suites run by `pawspec verify`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Axioms,
    Spectrum,
    Lemma1,
    Counts,
}

impl std::str::FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "axioms" => Ok(Suite::Axioms),
            "spectrum" => Ok(Suite::Spectrum),
            "lemma1" => Ok(Suite::Lemma1),
            "counts" => Ok(Suite::Counts),
            other => Err(Error::Parse(format!("unknown suite `{other}`"))),
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct SuiteReport {
    pub checks: u64,
    pub failures: Vec<String>,
}

impl SuiteReport {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn run_suite(suite: Suite, seed: u64) -> Result<SuiteReport> {
    let mut report = SuiteReport::default();
    match suite {
        Suite::Axioms => axioms_suite(&mut report, seed)?,
        Suite::Spectrum => spectrum_suite(&mut report, seed)?,
        Suite::Lemma1 => lemma1_suite(&mut report)?,
        Suite::Counts => counts_suite(&mut report)?,
    }
    Ok(report)
}

fn axioms_suite(report: &mut SuiteReport, seed: u64) -> Result<()> {
    for d in 1..=3 {
        let all = iscore::enumerate_all(d)?;
        for f in &all {
            let fi = f.inverse();
            report.check(f.compose(&fi)?.compose(f)? == *f, || format!("f f⁻¹ f != f for {f}"));
            report.check(fi.compose(f)?.compose(&fi)? == fi, || format!("f⁻¹ f f⁻¹ != f⁻¹ for {f}"));
        }
        let idem: Vec<_> = all.iter().filter(|f| f.is_idempotent()).collect();
        for e1 in &idem {
            for e2 in &idem {
                report.check(e1.compose(e2)? == e2.compose(e1)?, || {
                    format!("idempotents {e1} and {e2} do not commute")
                });
            }
        }
    }
    for y in wreath::enumerate_tree(2, 2)? {
        let yi = y.inverse();
        report.check(y.compose(&yi)?.compose(&y)? == y, || format!("y y⁻¹ y != y for {y:?}"));
    }
    let mut rng = trial_rng(seed, 0);
    let tables: Vec<CountTable> = (1..=3).map(|d| CountTable::new(d, 4)).collect();
    for i in 0..10_000u64 {
        let d = 1 + (i % 3) as usize;
        let n = 1 + ((i / 3) % 4) as usize;
        let t = &tables[d - 1];
        let (u, v, w) = (t.sample(n, &mut rng), t.sample(n, &mut rng), t.sample(n, &mut rng));
        let left = u.compose(&v)?.compose(&w)?;
        let right = u.compose(&v.compose(&w)?)?;
        report.check(left == right, || format!("associativity fails for {u:?}, {v:?}, {w:?}"));
        let uv = spectrum::action_matrix(&u.compose(&v)?)?;
        let prod = spectrum::action_matrix(&u)?.product(&spectrum::action_matrix(&v)?)?;
        report.check(uv == prod, || format!("A_(uv) != A_u A_v for {u:?}, {v:?}"));
    }
    Ok(())
}

fn spectrum_suite(report: &mut SuiteReport, seed: u64) -> Result<()> {
    let check_one = |report: &mut SuiteReport, y: &TreePA| -> Result<()> {
        report.check(spectrum::verify_spectrum(y)?, || format!("char poly mismatch for {y:?}"));
        let s = spectrum::structural_spectrum(y)?;
        let survivors = y.survivor_indices()?.len() as u64;
        let rk = y.ultimate_rank();
        report.check(s.nonzero_count() == survivors && survivors == rk, || {
            format!("nonzero count {}, survivors {survivors}, rk {rk} for {y:?}", s.nonzero_count())
        });
        Ok(())
    };
    for y in wreath::enumerate_tree(2, 2)? {
        check_one(report, &y)?;
    }
    let mut rng = trial_rng(seed, 1);
    for (d, n) in [(2, 3), (3, 2)] {
        let table = CountTable::new(d, n);
        for _ in 0..1000 {
            check_one(report, &table.sample(n, &mut rng))?;
        }
    }
    Ok(())
}

fn lemma1_suite(report: &mut SuiteReport) -> Result<()> {
    for (d, n) in [(2, 2), (1, 2), (1, 3)] {
        // exact_rn_by_top errors on any two-way mismatch
        let lemma = check_lemma1(d, n)?;
        for row in &lemma.rows {
            report.check(row.holds, || {
                format!(
                    "d={d} n={n} top {}: R_n(a) = {} exceeds bound {}",
                    row.top, row.value, row.bound
                )
            });
        }
    }
    Ok(())
}

fn counts_suite(report: &mut SuiteReport) -> Result<()> {
    let cases = (1..=5).map(|n| (1, n)).chain([(2, 1), (2, 2), (3, 1)]);
    for (d, n) in cases {
        let counted = wreath::count_elements(d, n);
        let listed = BigUint::from(wreath::enumerate_tree(d, n)?.len());
        report.check(counted == listed, || {
            format!("d={d} n={n}: count {counted} vs enumeration {listed}")
        });
    }
    for d in 1..=4 {
        let listed = BigUint::from(iscore::enumerate_all(d)?.len());
        report.check(listed == iscore::order(d), || format!("|IS_{d}| mismatch"));
    }
    Ok(())
}

/// `E ξ_n` as a float, for comparisons with Monte Carlo estimates.
pub fn rational_to_f64(r: &BigRational) -> f64 {
    let num = r.numer().to_f64().unwrap_or(f64::NAN);
    let den = r.denom().to_f64().unwrap_or(f64::NAN);
    num / den
}

/// `1 / d` as an exact rational.
pub fn inverse_degree(degree: usize) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(degree))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ratio(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn exact_small_tables() {
        let t = exact_expected_xi(2, 1).unwrap();
        assert_eq!(t.rank_sum, BigUint::from(6u32));
        assert_eq!(t.expected_xi, ratio(3, 7));
        assert_eq!(exact_expected_xi(1, 1).unwrap().expected_xi, ratio(1, 2));
        assert_eq!(exact_expected_xi(2, 2).unwrap().expected_xi, ratio(34, 127));
        assert_eq!(exact_expected_xi(3, 1).unwrap().expected_xi, ratio(13, 34));
    }

    #[test]
    fn rn_by_top_examples() {
        let rows = exact_rn_by_top(2, 2).unwrap();
        let get = |s: &str| {
            let a: PartialBijection = s.parse().unwrap();
            rows.iter().find(|r| r.top == a).unwrap().direct.clone()
        };
        assert_eq!(get("d=2:"), BigUint::zero());
        assert_eq!(get("d=2: 1>2"), BigUint::zero());
        // swap: 2 · Σ_{y₁,y₂ ∈ P₁} rk(y₁y₂)
        let p1 = wreath::enumerate_tree(2, 1).unwrap();
        let mut pair_sum = 0u64;
        for u in &p1 {
            for v in &p1 {
                pair_sum += u.compose(v).unwrap().ultimate_rank();
            }
        }
        assert_eq!(get("d=2: 1>2; 2>1"), BigUint::from(2 * pair_sum));
        assert_eq!(get("d=2: 1>1; 2>2"), BigUint::from(84u32));
        let total: BigUint = rows.iter().map(|r| &r.direct).sum();
        assert_eq!(total, BigUint::from(136u32));
    }

    #[test]
    fn lemma1_small_levels() {
        for n in 2..=3 {
            assert!(check_lemma1(1, n).unwrap().all_hold());
        }
        let report = check_lemma1(2, 2).unwrap();
        let bad: Vec<String> = report.violations().map(|r| r.top.to_string()).collect();
        // the stated bound fails only for the identity top (84 > 42)
        assert_eq!(bad, vec!["d=2: 1>1; 2>2".to_string()]);
        assert!(check_lemma1(2, 1).is_err());
    }

    #[test]
    fn lemma2_factor_is_at_most_inverse_degree() {
        for d in 1..=4 {
            let t = CountTable::new(d, 6);
            for n in 1..=6 {
                assert!(lemma2_factor(&t, n) <= inverse_degree(d), "d={d} n={n}");
            }
        }
    }

    #[test]
    fn leaf_rank_bound() {
        for n in 0..=2 {
            let total = leaf_rank_total(2, n).unwrap();
            let bound = BigUint::from(2u32).pow(n as u32) * wreath::count_elements(2, n);
            assert!(total <= bound);
        }
    }

    #[test]
    fn monte_carlo_is_deterministic() {
        let a = monte_carlo_xi(2, 3, 1, 99).unwrap();
        let b = monte_carlo_xi(2, 3, 1, 99).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.stderr, 0.0);
        let a = monte_carlo_xi(3, 2, 500, 7).unwrap();
        let b = monte_carlo_xi(3, 2, 500, 7).unwrap();
        assert_eq!(a.to_csv(), b.to_csv());
        assert!((0.0..=1.0).contains(&a.mean_xi));
        assert!(monte_carlo_xi(2, 2, 0, 1).is_err());
    }

    #[test]
    fn abs_squared_integral_equals_xi() {
        let s = monte_carlo_xi(2, 4, 2000, 3).unwrap();
        assert!((s.mean_integrals["abs_z_sq"] - s.mean_xi).abs() < 1e-12);
        assert!((s.mean_integrals["const(1)"] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn csv_layout() {
        let s = monte_carlo_xi(2, 1, 10, 1).unwrap();
        let csv = s.to_csv();
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some(CSV_HEADER));
        let row = lines.next().unwrap();
        assert_eq!(row.split(',').count(), 9);
        assert!(row.starts_with("2,1,10,1,"));
        let t = convergence_table(2, 3, 50, 1).unwrap();
        let csv = t.to_csv();
        assert_eq!(csv.lines().count(), 4);
        assert!(csv.lines().all(|l| l.split(',').count() == 9));
    }

    #[test]
    fn suites_parse() {
        assert_eq!("axioms".parse::<Suite>().unwrap(), Suite::Axioms);
        assert!("nope".parse::<Suite>().is_err());
    }
}
