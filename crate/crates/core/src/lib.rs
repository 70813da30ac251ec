//! Partial automorphisms of the `n`-level `d`-regular rooted tree, built as
//! iterated partial wreath powers of the symmetric inverse semigroup `IS_d`,
//! together with the spectra of their bottom-level action matrices.
//!
//! - [`iscore`]: partial bijections of `{1..d}`.
//! - [`wreath`]: tree elements, exact counting, uniform sampling, ultimate rank.
//! - [`spectrum`]: action matrices, exact spectra, the empirical spectral measure.
//! - [`xplab`]: exact expectations, the per-top rank sums and Monte Carlo runs.

mod combinat;
pub mod error;
pub mod iscore;
pub mod spectrum;
pub mod wreath;
pub mod xplab;

pub use error::{Error, Result};
pub use iscore::{CycleChainDecomposition, PartialBijection};
pub use spectrum::{
    action_matrix, char_poly_exact, integrate, measure_from_summary, structural_spectrum,
    verify_spectrum, ActionMatrix, EmpiricalMeasure, SpectralSummary, TestFunction,
};
pub use wreath::{count_elements, enumerate_tree, sample_uniform_tree, CountTable, LeafPath, TreePA};
pub use xplab::{
    check_lemma1, convergence_table, exact_expected_xi, exact_rn_by_top, monte_carlo_xi,
    ConvergenceTable, ExactTable, TrialStats,
};
