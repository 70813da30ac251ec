use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};

use pawspec_core::xplab::{self, Suite};
use pawspec_core::{spectrum, wreath, CountTable, TreePA};

const SEED_ENV: &str = "PAWSPEC_SEED";
const DEFAULT_VERIFY_SEED: u64 = 20_240_601;

#[derive(Parser)]
#[command(name = "pawspec", version, about = "Partial automorphisms of regular rooted trees and their action-matrix spectra")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print N_n, the number of partial automorphisms of the n-level d-regular tree.
    Count {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        n: usize,
    },
    /// List every element of P_n, one JSON object per line.
    Enumerate {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "json")]
        out: ElementFormat,
    },
    /// Draw uniform random elements, one JSON object per line.
    Sample {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 1)]
        count: u64,
    },
    /// Export the action matrix of an element.
    Matrix {
        #[arg(long)]
        element: PathBuf,
        #[arg(long, value_enum, default_value = "coords")]
        out: MatrixFormat,
    },
    /// Export the exact spectrum (json) or the spectral measure (csv) of an element.
    Spectrum {
        #[arg(long)]
        element: PathBuf,
        #[arg(long, value_enum, default_value = "json")]
        out: SpectrumFormat,
    },
    /// Exact N_n, R_n and E ξ_n by exhaustive enumeration.
    Exact {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        n: usize,
        /// Also print R_n(a) for every top map a.
        #[arg(long)]
        by_top: bool,
    },
    /// Monte Carlo estimate of E ξ_n.
    Montecarlo {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        trials: u64,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, value_enum, default_value = "csv")]
        out: TableFormat,
    },
    /// Monte Carlo estimates for n = 1..=nmax with level-to-level ratios.
    Converge {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        nmax: usize,
        #[arg(long)]
        trials: u64,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, value_enum, default_value = "csv")]
        out: TableFormat,
    },
    /// Run a verification suite; exits 1 if any check fails.
    Verify {
        #[arg(long, value_enum)]
        suite: SuiteArg,
        #[arg(long)]
        seed: Option<u64>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ElementFormat {
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum MatrixFormat {
    Coords,
}

#[derive(Clone, Copy, ValueEnum)]
enum SpectrumFormat {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableFormat {
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Axioms,
    Spectrum,
    Lemma1,
    Counts,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Self {
        match s {
            SuiteArg::Axioms => Suite::Axioms,
            SuiteArg::Spectrum => Suite::Spectrum,
            SuiteArg::Lemma1 => Suite::Lemma1,
            SuiteArg::Counts => Suite::Counts,
        }
    }
}

enum Outcome {
    Ok,
    VerificationFailed,
}

/// The environment variable wins over `--seed`.
fn resolve_seed(flag: Option<u64>) -> anyhow::Result<Option<u64>> {
    match std::env::var(SEED_ENV) {
        Ok(v) => Ok(Some(
            v.trim()
                .parse()
                .with_context(|| format!("{SEED_ENV}={v} is not an unsigned integer"))?,
        )),
        Err(_) => Ok(flag),
    }
}

fn required_seed(flag: Option<u64>) -> anyhow::Result<u64> {
    match resolve_seed(flag)? {
        Some(s) => Ok(s),
        None => bail!("--seed is required (or set {SEED_ENV})"),
    }
}

fn check_degree(d: usize) -> anyhow::Result<()> {
    if d == 0 {
        bail!("--d must be at least 1");
    }
    Ok(())
}

fn read_element(path: &Path) -> anyhow::Result<TreePA> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("cannot read {}", path.display()))?;
    TreePA::from_json(&text).with_context(|| format!("{} is not a valid element", path.display()))
}

fn run(cli: Cli, out: &mut impl Write) -> anyhow::Result<Outcome> {
    match cli.command {
        Command::Count { d, n } => {
            check_degree(d)?;
            writeln!(out, "{}", wreath::count_elements(d, n))?;
        }
        Command::Enumerate { d, n, out: ElementFormat::Json } => {
            for y in wreath::enumerate_tree(d, n)? {
                writeln!(out, "{}", y.to_json())?;
            }
        }
        Command::Sample { d, n, seed, count } => {
            check_degree(d)?;
            let seed = required_seed(seed)?;
            let table = CountTable::new(d, n);
            for i in 0..count {
                let mut rng = xplab::trial_rng(seed, i);
                writeln!(out, "{}", table.sample(n, &mut rng).to_json())?;
            }
        }
        Command::Matrix { element, out: MatrixFormat::Coords } => {
            let y = read_element(&element)?;
            write!(out, "{}", spectrum::action_matrix(&y)?.to_coords())?;
        }
        Command::Spectrum { element, out: format } => {
            let y = read_element(&element)?;
            let summary = spectrum::structural_spectrum(&y)?;
            match format {
                SpectrumFormat::Json => writeln!(out, "{}", summary.to_json())?,
                SpectrumFormat::Csv => {
                    write!(out, "{}", spectrum::measure_from_summary(&summary).to_csv())?
                }
            }
        }
        Command::Exact { d, n, by_top } => {
            let table = xplab::exact_expected_xi(d, n)?;
            writeln!(out, "d={d} n={n}")?;
            writeln!(out, "N_n = {}", table.count)?;
            writeln!(out, "R_n = {}", table.rank_sum)?;
            writeln!(
                out,
                "E xi_n = {} ≈ {}",
                table.expected_xi,
                xplab::rational_to_f64(&table.expected_xi)
            )?;
            if by_top && n >= 1 {
                for row in xplab::exact_rn_by_top(d, n)? {
                    writeln!(out, "R_n({}) = {}", row.top, row.direct)?;
                }
            }
        }
        Command::Montecarlo { d, n, trials, seed, out: TableFormat::Csv } => {
            check_degree(d)?;
            if trials == 0 {
                bail!("--trials must be at least 1");
            }
            let seed = required_seed(seed)?;
            write!(out, "{}", xplab::monte_carlo_xi(d, n, trials, seed)?.to_csv())?;
        }
        Command::Converge { d, nmax, trials, seed, out: TableFormat::Csv } => {
            check_degree(d)?;
            if trials == 0 {
                bail!("--trials must be at least 1");
            }
            let seed = required_seed(seed)?;
            write!(out, "{}", xplab::convergence_table(d, nmax, trials, seed)?.to_csv())?;
        }
        Command::Verify { suite, seed } => {
            let seed = resolve_seed(seed)?.unwrap_or(DEFAULT_VERIFY_SEED);
            let report = xplab::run_suite(suite.into(), seed)?;
            for failure in &report.failures {
                writeln!(out, "FAIL {failure}")?;
            }
            writeln!(
                out,
                "{} checks, {} failed",
                report.checks,
                report.failures.len()
            )?;
            if !report.passed() {
                return Ok(Outcome::VerificationFailed);
            }
        }
    }
    Ok(Outcome::Ok)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let result = run(cli, &mut out);
    let flushed = out.flush();
    match (result, flushed) {
        (Ok(Outcome::Ok), Ok(())) => ExitCode::SUCCESS,
        (Ok(Outcome::VerificationFailed), Ok(())) => ExitCode::from(1),
        (Err(e), _) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
        (_, Err(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
