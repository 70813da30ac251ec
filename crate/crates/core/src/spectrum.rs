//! Action matrices of tree elements on the bottom level and their spectra.
//!
//! An action matrix is a partial permutation matrix, so its spectrum is
//! determined by the cycle type of the leaf action on the surviving leaves:
//! each cycle of length `c` contributes the `c`-th roots of unity, and every
//! other eigenvalue is zero. Spectra are kept in that exact form; floating
//! point only appears when a test function is evaluated.

use std::collections::BTreeMap;
use std::f64::consts::TAU;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::wreath::TreePA;

/// Largest dimension for which [`action_matrix`] materializes the matrix.
pub const MAX_MATRIX_DIM: usize = 1 << 16;

/// Largest dimension accepted by the characteristic-polynomial oracle.
pub const MAX_CHAR_POLY_DIM: usize = 64;

/// A 0/1 matrix with at most one nonzero per row and per column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActionMatrix {
    /// `cols[i] = Some(j)` iff entry `(i, j)` (0-based) is 1.
    cols: Vec<Option<usize>>,
}

impl ActionMatrix {
    /// Builds the matrix from 1-based `(row, col)` entries.
    pub fn from_entries(dim: usize, entries: &[(usize, usize)]) -> Result<Self> {
        let mut cols = vec![None; dim];
        let mut col_used = vec![false; dim];
        for &(i, j) in entries {
            if i == 0 || j == 0 || i > dim || j > dim {
                return Err(Error::Parse(format!("entry ({i},{j}) outside 1..={dim}")));
            }
            if cols[i - 1].replace(j - 1).is_some() {
                return Err(Error::Parse(format!("row {i} has two entries")));
            }
            if std::mem::replace(&mut col_used[j - 1], true) {
                return Err(Error::Parse(format!("column {j} has two entries")));
            }
        }
        Ok(Self { cols })
    }

    pub fn dim(&self) -> usize {
        self.cols.len()
    }

    /// Column of the unique 1 in row `i` (0-based), if any.
    pub fn col_of(&self, row: usize) -> Option<usize> {
        self.cols[row]
    }

    /// Nonzero positions as 1-based `(row, col)` pairs, by row.
    pub fn entries(&self) -> Vec<(usize, usize)> {
        self.cols
            .iter()
            .enumerate()
            .filter_map(|(i, j)| j.map(|j| (i + 1, j + 1)))
            .collect()
    }

    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        let n = self.dim();
        let mut m = vec![vec![0; n]; n];
        for (i, j) in self.cols.iter().enumerate() {
            if let Some(j) = j {
                m[i][*j] = 1;
            }
        }
        m
    }

    /// Matrix product `self · other`.
    pub fn product(&self, other: &Self) -> Result<Self> {
        if self.dim() != other.dim() {
            return Err(Error::DegreeMismatch {
                left: self.dim(),
                right: other.dim(),
            });
        }
        Ok(Self {
            cols: self.cols.iter().map(|j| j.and_then(|j| other.cols[j])).collect(),
        })
    }

    /// Coordinate text: a `dim dim nnz` header, then one `i j` line per entry.
    pub fn to_coords(&self) -> String {
        let entries = self.entries();
        let mut out = format!("{} {} {}\n", self.dim(), self.dim(), entries.len());
        for (i, j) in entries {
            writeln!(out, "{i} {j}").unwrap();
        }
        out
    }

    pub fn from_coords(text: &str) -> Result<Self> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let header = lines.next().ok_or_else(|| Error::Parse("empty coordinate file".into()))?;
        let nums = parse_numbers(header)?;
        let [rows, cols, nnz] = nums[..] else {
            return Err(Error::Parse(format!("bad header `{header}`")));
        };
        if rows != cols {
            return Err(Error::Parse("action matrices are square".into()));
        }
        let mut entries = Vec::with_capacity(nnz);
        for line in lines {
            match parse_numbers(line)?[..] {
                [i, j] => entries.push((i, j)),
                _ => return Err(Error::Parse(format!("bad entry line `{line}`"))),
            }
        }
        if entries.len() != nnz {
            return Err(Error::Parse(format!("header says {nnz} entries, found {}", entries.len())));
        }
        Self::from_entries(rows, &entries)
    }
}

fn parse_numbers(line: &str) -> Result<Vec<usize>> {
    line.split_whitespace()
        .map(|t| t.parse().map_err(|_| Error::Parse(format!("bad number `{t}`"))))
        .collect()
}

/// `A_y`: entry `(i, j)` is 1 iff `y` maps leaf `i` to leaf `j`.
pub fn action_matrix(y: &TreePA) -> Result<ActionMatrix> {
    match y.num_leaves() {
        Some(dim) if dim <= MAX_MATRIX_DIM => Ok(ActionMatrix { cols: y.leaf_map()? }),
        _ => Err(Error::TooLarge {
            what: "action matrix dimension",
            size: format!("{}^{}", y.degree(), y.level()),
            limit: MAX_MATRIX_DIM.to_string(),
        }),
    }
}

/// Exact spectrum of a partial permutation matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectralSummary {
    pub dim: u64,
    pub zero_mult: u64,
    /// Cycle lengths of the permutation on surviving leaves, ascending.
    #[serde(rename = "cycles")]
    pub cycle_lengths: Vec<u64>,
}

impl SpectralSummary {
    pub fn from_cycle_lengths(dim: u64, mut cycle_lengths: Vec<u64>) -> Self {
        cycle_lengths.sort_unstable();
        let nonzero: u64 = cycle_lengths.iter().sum();
        assert!(nonzero <= dim, "cycles cover more than the dimension");
        Self {
            dim,
            zero_mult: dim - nonzero,
            cycle_lengths,
        }
    }

    /// Eigenvalues different from zero, counted with multiplicity.
    pub fn nonzero_count(&self) -> u64 {
        self.cycle_lengths.iter().sum()
    }

    /// `λ^{zero_mult} · Π_c (λ^c − 1)`, ascending coefficients.
    pub fn char_poly(&self) -> Vec<BigInt> {
        let mut poly = vec![BigInt::zero(); self.zero_mult as usize];
        poly.push(BigInt::one());
        for &c in &self.cycle_lengths {
            let c = c as usize;
            // multiply by λ^c − 1
            let mut next = vec![BigInt::zero(); poly.len() + c];
            for (k, coef) in poly.iter().enumerate() {
                next[k + c] += coef;
                next[k] -= coef;
            }
            poly = next;
        }
        poly
    }

    /// Eigenvalues as exact fractions of a turn, with multiplicity; `None` is 0.
    fn eigen_turns(&self) -> impl Iterator<Item = Option<Ratio<u64>>> + '_ {
        std::iter::repeat_n(None, self.zero_mult as usize)
            .chain(
                self.cycle_lengths
                    .iter()
                    .flat_map(|&c| (0..c).map(move |k| Some(Ratio::new(k, c)))),
            )
    }

    /// Eigenvalues as complex numbers, with multiplicity.
    pub fn eigenvalues(&self) -> Vec<Complex64> {
        self.eigen_turns().map(turn_to_point).collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("summary serialization cannot fail")
    }
}

fn turn_to_point(turn: Option<Ratio<u64>>) -> Complex64 {
    match turn {
        None => Complex64::new(0.0, 0.0),
        Some(r) => Complex64::from_polar(1.0, TAU * (*r.numer() as f64) / (*r.denom() as f64)),
    }
}

/// Spectrum read off the leaf action: the permutation on the survivor set
/// gives the cycles, every other eigenvalue is zero.
pub fn structural_spectrum(y: &TreePA) -> Result<SpectralSummary> {
    let map = y.leaf_map()?;
    let survivors = y.survivor_indices()?;
    let mut alive = vec![false; map.len()];
    for &v in &survivors {
        alive[v] = true;
    }
    let mut seen = vec![false; map.len()];
    let mut lengths = Vec::new();
    for &start in &survivors {
        if seen[start] {
            continue;
        }
        let mut len = 0u64;
        let mut cur = start;
        loop {
            seen[cur] = true;
            len += 1;
            cur = map[cur].expect("survivors stay in the domain");
            debug_assert!(alive[cur], "survivors map to survivors");
            if cur == start {
                break;
            }
        }
        lengths.push(len);
    }
    Ok(SpectralSummary::from_cycle_lengths(map.len() as u64, lengths))
}

/// Coefficients of `det(λI − A)` in ascending powers of `λ`, by the
/// Faddeev–LeVerrier recurrence in exact integer arithmetic:
/// `M_k = A M_{k-1} + c_{n-k+1} I`, `c_{n-k} = −tr(A M_k) / k`.
pub fn char_poly_exact(m: &ActionMatrix) -> Result<Vec<BigInt>> {
    let n = m.dim();
    if n > MAX_CHAR_POLY_DIM {
        return Err(Error::TooLarge {
            what: "characteristic polynomial dimension",
            size: n.to_string(),
            limit: MAX_CHAR_POLY_DIM.to_string(),
        });
    }
    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[n] = BigInt::one();
    // row-major n×n
    let mut mk = vec![BigInt::zero(); n * n];
    // A·M for a partial permutation A: row i of the product is row col(i) of M
    let left_mul = |mat: &[BigInt]| -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); n * n];
        for i in 0..n {
            if let Some(j) = m.col_of(i) {
                out[i * n..(i + 1) * n].clone_from_slice(&mat[j * n..(j + 1) * n]);
            }
        }
        out
    };
    for k in 1..=n {
        mk = left_mul(&mk);
        let c = coeffs[n - k + 1].clone();
        for i in 0..n {
            mk[i * n + i] += &c;
        }
        let am = left_mul(&mk);
        let trace: BigInt = (0..n).map(|i| &am[i * n + i]).sum();
        let (q, r) = trace.div_rem(&BigInt::from(k));
        if !r.is_zero() {
            return Err(Error::Invariant(format!(
                "Faddeev-LeVerrier trace {trace} not divisible by {k}"
            )));
        }
        coeffs[n - k] = -q;
    }
    Ok(coeffs)
}

/// Checks the structural spectrum of `y` against the characteristic
/// polynomial of its action matrix.
pub fn verify_spectrum(y: &TreePA) -> Result<bool> {
    let matrix = action_matrix(y)?;
    let exact = char_poly_exact(&matrix)?;
    Ok(exact == structural_spectrum(y)?.char_poly())
}

/// Formats ascending coefficients as a polynomial in `λ`, highest power first.
pub fn format_poly(coeffs: &[BigInt]) -> String {
    let mut terms = Vec::new();
    for (k, c) in coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let mag = c.abs();
        let sign = if c.is_negative() { "-" } else { "+" };
        let body = match (k, mag.is_one()) {
            (0, _) => mag.to_string(),
            (1, true) => "λ".to_string(),
            (1, false) => format!("{mag}λ"),
            (_, true) => format!("λ^{k}"),
            (_, false) => format!("{mag}λ^{k}"),
        };
        terms.push((sign, body));
    }
    if terms.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (sign, body)) in terms.iter().enumerate() {
        match (i, *sign) {
            (0, "-") => out.push('-'),
            (0, _) => {}
            _ => {
                out.push(' ');
                out.push_str(sign);
                out.push(' ');
            }
        }
        out.push_str(body);
    }
    out
}

/// One point mass of an [`EmpiricalMeasure`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Atom {
    pub point: Complex64,
    pub weight: f64,
}

/// Uniform probability measure on the eigenvalues of an action matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct EmpiricalMeasure {
    atoms: Vec<Atom>,
}

impl EmpiricalMeasure {
    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn total_weight(&self) -> f64 {
        self.atoms.iter().map(|a| a.weight).sum()
    }

    /// CSV with header `re,im,weight`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("re,im,weight\n");
        for a in &self.atoms {
            writeln!(out, "{},{},{}", a.point.re, a.point.im, a.weight).unwrap();
        }
        out
    }
}

/// Atom at 0 with weight `zero_mult / dim` and one atom per distinct root of
/// unity; coincident roots from different cycles are merged exactly.
pub fn measure_from_summary(s: &SpectralSummary) -> EmpiricalMeasure {
    let mut mass: BTreeMap<Option<Ratio<u64>>, u64> = BTreeMap::new();
    for turn in s.eigen_turns() {
        *mass.entry(turn).or_default() += 1;
    }
    let dim = s.dim as f64;
    EmpiricalMeasure {
        atoms: mass
            .into_iter()
            .map(|(turn, count)| Atom {
                point: turn_to_point(turn),
                weight: count as f64 / dim,
            })
            .collect(),
    }
}

/// Built-in test functions on the closed unit disc.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum TestFunction {
    Constant(f64),
    Re,
    Im,
    AbsSquared,
    Power(u32),
    RePower(u32),
    ImPower(u32),
}

impl TestFunction {
    /// The set used for weak-convergence statistics.
    pub const STANDARD: [TestFunction; 6] = [
        TestFunction::Constant(1.0),
        TestFunction::Re,
        TestFunction::Im,
        TestFunction::AbsSquared,
        TestFunction::RePower(2),
        TestFunction::ImPower(2),
    ];

    pub fn eval(&self, z: Complex64) -> Complex64 {
        match *self {
            TestFunction::Constant(c) => Complex64::new(c, 0.0),
            TestFunction::Re => Complex64::new(z.re, 0.0),
            TestFunction::Im => Complex64::new(z.im, 0.0),
            TestFunction::AbsSquared => Complex64::new(z.norm_sqr(), 0.0),
            TestFunction::Power(k) => z.powu(k),
            TestFunction::RePower(k) => Complex64::new(z.powu(k).re, 0.0),
            TestFunction::ImPower(k) => Complex64::new(z.powu(k).im, 0.0),
        }
    }

    pub fn name(&self) -> String {
        match *self {
            TestFunction::Constant(c) => format!("const({c})"),
            TestFunction::Re => "re_z".into(),
            TestFunction::Im => "im_z".into(),
            TestFunction::AbsSquared => "abs_z_sq".into(),
            TestFunction::Power(k) => format!("z_pow{k}"),
            TestFunction::RePower(k) => format!("re_z_pow{k}"),
            TestFunction::ImPower(k) => format!("im_z_pow{k}"),
        }
    }
}

/// `∫ f dm = Σ weight · f(atom)`.
pub fn integrate(f: &TestFunction, m: &EmpiricalMeasure) -> Complex64 {
    integrate_with(|z| f.eval(z), m)
}

pub fn integrate_with(f: impl Fn(Complex64) -> Complex64, m: &EmpiricalMeasure) -> Complex64 {
    m.atoms.iter().map(|a| f(a.point) * a.weight).sum()
}
