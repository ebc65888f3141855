//! Command-line front end. Every command writes one report (JSON or CSV) to
//! stdout or `--output`, and the process exit code says whether all checked
//! contracts held: 0 pass, 1 contract failure, 2 bad configuration or I/O.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::counterexample::{self, CounterexampleReport};
use crate::eigen::{self, PartialSumScan, RootOfUnity};
use crate::recurrence::{self, Angle, Classification, FiniteEigenSum, RecurrenceReport};
use crate::seqspace::{block_norm, factorial, MAX_K};
use crate::zeta_orbit::{self, StripGrid, ZetaScan};
use crate::{Error, Result, VERSION};

/// Identifier of the report layout; bumped on incompatible changes.
pub const SCHEMA: &str = "reclab-report/1";
/// Environment variable capping the worker thread count.
pub const THREADS_ENV: &str = "RECLAB_THREADS";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "reclab", version, about = "Recurrence experiments for block-diagonal weighted shifts and the alternating zeta orbit")]
pub struct Cli {
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Report format (lemma3 defaults to csv, everything else to json).
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Subcommand, Serialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Command {
    /// Non-recurrence certificate for y plus the series and partial-sum checks.
    Counterexample(CounterexampleArgs),
    /// Eigenvector relation, basis reconstruction, ordering and decomposition checks.
    EigenVerify(EigenArgs),
    /// Exhaustive partial-sum norm scan against 12 k!/2^k.
    #[command(name = "lemma3")]
    #[serde(rename = "lemma3")]
    PartialSums(PartialSumArgs),
    /// Uniform recurrence of a finite sum of unimodular eigenvectors.
    #[command(name = "theorem-f")]
    #[serde(rename = "theorem-f")]
    UniformRecurrence(UniformRecurrenceArgs),
    /// Exploratory return-time scan of the alternating zeta function under the vertical shift.
    ZetaOrbit(ZetaArgs),
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct CounterexampleArgs {
    /// Number of blocks kept (2..=8).
    #[arg(long, default_value_t = counterexample::DEFAULT_K_MAX)]
    pub k_max: usize,
    /// Largest power checked, at most k_max - 1 (default k_max - 1).
    #[arg(long)]
    pub l_max: Option<u64>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct EigenArgs {
    /// Largest block index for the eigen relation and ordering checks (2..=6).
    #[arg(long, default_value_t = 6)]
    pub k_max: usize,
    /// Roots sampled per block.
    #[arg(long, default_value_t = 20)]
    pub samples: usize,
    /// Seed of the sampling generator (ChaCha8).
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Orders n for the basis reconstruction check.
    #[arg(long, value_delimiter = ',', default_value = "2,6,24,120")]
    pub orders: Vec<usize>,
    /// Largest block index for the decomposition and closed-form checks (2..=6).
    #[arg(long, default_value_t = 5)]
    pub decomposition_k_max: usize,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct PartialSumArgs {
    /// Block index or inclusive range `a..b` (2..=8).
    #[arg(long, default_value = "2..7", value_parser = parse_k_range)]
    pub k: KRange,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct KRange {
    pub first: usize,
    pub last: usize,
}

fn parse_k_range(text: &str) -> std::result::Result<KRange, String> {
    let parse = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("bad block index {t:?}: {e}"));
    let (first, last) = match text.split_once("..") {
        Some((a, b)) => (parse(a)?, parse(b.trim_start_matches('='))?),
        None => {
            let k = parse(text)?;
            (k, k)
        }
    };
    if first < 2 || last > MAX_K || first > last {
        return Err(format!("block range {first}..{last} must satisfy 2 <= a <= b <= {MAX_K}"));
    }
    Ok(KRange { first, last })
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct UniformRecurrenceArgs {
    /// Angles theta_j in [0, 1): `p/q`, decimals or `golden`.
    #[arg(long, value_delimiter = ',', required = true)]
    pub angles: Vec<Angle>,
    /// Positive weights, one per angle (default all 1).
    #[arg(long, value_delimiter = ',')]
    pub weights: Option<Vec<f64>>,
    /// Radius of the ball around x.
    #[arg(long, default_value_t = 0.1)]
    pub epsilon: f64,
    /// Steps scanned; the gap is also recomputed at twice this horizon.
    #[arg(long, default_value_t = 100_000)]
    pub horizon: u64,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ZetaArgs {
    /// Lower real bound of the grid, inside (1/2, 1).
    #[arg(long, default_value_t = 0.6)]
    pub re_min: f64,
    /// Upper real bound of the grid, inside (1/2, 1).
    #[arg(long, default_value_t = 0.9)]
    pub re_max: f64,
    /// Lower imaginary bound of the grid.
    #[arg(long, default_value_t = -1.0, allow_hyphen_values = true)]
    pub im_min: f64,
    /// Upper imaginary bound of the grid.
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    pub im_max: f64,
    /// Grid size `m` or `m x p` (real x imaginary).
    #[arg(long, default_value = "11x11", value_parser = parse_grid)]
    pub grid: GridSize,
    /// Ball radius; default twice the n = 1 sup distance.
    #[arg(long)]
    pub epsilon: Option<f64>,
    /// Number of shifts scanned (at most 500).
    #[arg(long, default_value_t = 200)]
    pub horizon: u64,
    /// Per-evaluation tolerance.
    #[arg(long, default_value_t = 1e-6)]
    pub tol: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GridSize {
    pub re: usize,
    pub im: usize,
}

fn parse_grid(text: &str) -> std::result::Result<GridSize, String> {
    let parse = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("bad grid size {t:?}: {e}"));
    let (re, im) = match text.split_once(['x', 'X']) {
        Some((a, b)) => (parse(a)?, parse(b)?),
        None => {
            let m = parse(text)?;
            (m, m)
        }
    };
    if re == 0 || im == 0 {
        return Err("grid sizes must be positive".into());
    }
    Ok(GridSize { re, im })
}

/// A finished command: its report text and whether every contract held.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub pass: bool,
    pub text: String,
}

#[derive(Serialize)]
struct Envelope<'a, C: Serialize, R: Serialize> {
    schema: &'static str,
    version: &'static str,
    config: &'a C,
    pass: bool,
    result: R,
}

fn envelope<R: Serialize>(command: &Command, pass: bool, result: R) -> Result<String> {
    let env = Envelope { schema: SCHEMA, version: VERSION, config: command, pass, result };
    let mut text = serde_json::to_string_pretty(&env).map_err(|e| Error::Config(format!("serialization failed: {e}")))?;
    text.push('\n');
    Ok(text)
}

fn finish<R: Serialize>(command: &Command, format: Format, pass: bool, result: R, csv: impl FnOnce() -> String) -> Result<Outcome> {
    let text = match format {
        Format::Json => envelope(command, pass, result)?,
        Format::Csv => csv(),
    };
    Ok(Outcome { pass, text })
}

/// Runs one parsed command; the returned text is the full report.
pub fn run(command: &Command, format: Option<Format>) -> Result<Outcome> {
    match command {
        Command::Counterexample(a) => run_counterexample(command, a, format.unwrap_or(Format::Json)),
        Command::EigenVerify(a) => run_eigen(command, a, format.unwrap_or(Format::Json)),
        Command::PartialSums(a) => run_partial_sums(command, a, format.unwrap_or(Format::Csv)),
        Command::UniformRecurrence(a) => run_uniform_recurrence(command, a, format.unwrap_or(Format::Json)),
        Command::ZetaOrbit(a) => run_zeta(command, a, format.unwrap_or(Format::Json)),
    }
}

fn run_counterexample(command: &Command, a: &CounterexampleArgs, format: Format) -> Result<Outcome> {
    if !(2..=MAX_K).contains(&a.k_max) {
        return Err(Error::Config(format!("--k-max must be in 2..={MAX_K}, got {}", a.k_max)));
    }
    let l_max = a.l_max.unwrap_or(a.k_max as u64 - 1);
    if l_max == 0 || l_max >= a.k_max as u64 {
        return Err(Error::Truncation { power: l_max, k_max: a.k_max });
    }
    let report: CounterexampleReport = counterexample::run_report(a.k_max, l_max)?;
    let pass = report.all_pass();
    let csv = || {
        let mut out = String::from("l,distance_sq,certified\n");
        for d in &report.per_power {
            let _ = writeln!(out, "{},{},{}", d.power, d.distance_sq, d.certified);
        }
        out
    };
    finish(command, format, pass, &report, csv)
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub param: String,
    pub value: f64,
    pub bound: f64,
    pub pass: bool,
}

impl Check {
    fn new(name: &str, param: String, value: f64, bound: f64) -> Self {
        Self { name: name.into(), param, value, bound, pass: value <= bound }
    }
}

#[derive(Debug, Clone, Serialize)]
struct EigenReport {
    seed: u64,
    sampled_indices: Vec<(usize, Vec<u64>)>,
    checks: Vec<Check>,
}

fn dist(a: &[Complex64], b: &[Complex64]) -> f64 {
    let diff: Vec<Complex64> = a.iter().zip(b).map(|(x, y)| x - y).collect();
    block_norm(&diff)
}

fn run_eigen(command: &Command, a: &EigenArgs, format: Format) -> Result<Outcome> {
    if !(2..=6).contains(&a.k_max) || !(2..=6).contains(&a.decomposition_k_max) {
        return Err(Error::Config("--k-max and --decomposition-k-max must be in 2..=6".into()));
    }
    if a.samples == 0 {
        return Err(Error::Config("--samples must be >= 1".into()));
    }
    for &n in &a.orders {
        if !(2..=eigen::MAX_RECONSTRUCTION_ORDER).contains(&n) {
            return Err(Error::Config(format!("reconstruction order {n} outside 2..={}", eigen::MAX_RECONSTRUCTION_ORDER)));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
    let mut checks = Vec::new();
    let mut sampled_indices = Vec::new();

    for k in 2..=a.k_max {
        let n = factorial(k) as u64;
        let picks: Vec<u64> = (0..a.samples).map(|_| rng.random_range(0..n)).collect();
        let worst = picks
            .par_iter()
            .map(|&m| eigen::eigen_residual(k, RootOfUnity::new(n, m)?))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .fold(0.0, f64::max);
        checks.push(Check::new("eigen_relation", format!("k={k}"), worst, 1e-12));
        sampled_indices.push((k, picks));
    }

    for &n in &a.orders {
        let worst = (1..=n)
            .into_par_iter()
            .map(|j| {
                let mut e = vec![Complex64::new(0.0, 0.0); n];
                e[j - 1] = Complex64::new(1.0, 0.0);
                Ok(dist(&eigen::basis_from_eigen(n, j)?, &e))
            })
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .fold(0.0, f64::max);
        checks.push(Check::new("basis_reconstruction", format!("n={n}"), worst, 1e-10));
    }

    for k in 2..=a.k_max {
        let n = factorial(k);
        let mut seen = vec![false; n];
        let mut duplicates = 0usize;
        for i in 0..n {
            let m = eigen::ordered_index(k, i)? as usize;
            if std::mem::replace(&mut seen[m], true) {
                duplicates += 1;
            }
        }
        let missing = seen.iter().filter(|s| !**s).count();
        checks.push(Check::new("ordering_bijection", format!("k={k}"), (duplicates + missing) as f64, 0.0));
    }

    for n in 2..=24u64 {
        let worst = (0..n as i64)
            .map(|p| {
                let want = if p == 0 { n as f64 } else { 0.0 };
                (eigen::root_power_sum(n, p) - want).norm()
            })
            .fold(0.0, f64::max);
        checks.push(Check::new("dft_orthogonality", format!("n={n}"), worst, 1e-10));
    }

    for k in 2..=a.decomposition_k_max {
        let runs = factorial(k - 1);
        let closed = (0..runs).map(|r| eigen::t_r_closed_form(k, r)).collect::<Result<Vec<_>>>()?;
        let mut worst_closed = 0.0f64;
        for (r, c) in closed.iter().enumerate() {
            worst_closed = worst_closed.max(dist(c, &eigen::t_r_direct(k, r)?));
        }
        checks.push(Check::new("run_closed_form", format!("k={k}"), worst_closed, 1e-10));

        let worst = (0..factorial(k))
            .into_par_iter()
            .map(|i| {
                let (r_count, _) = eigen::decompose(k, i);
                let mut sum = eigen::e_a_direct(k, i)?;
                for c in &closed[..r_count] {
                    sum.iter_mut().zip(c).for_each(|(s, t)| *s += t);
                }
                Ok(dist(&sum, &eigen::partial_sum_scaled(k, i)?))
            })
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .fold(0.0, f64::max);
        checks.push(Check::new("decomposition", format!("k={k}"), worst, 1e-10));
    }

    let pass = checks.iter().all(|c| c.pass);
    let report = EigenReport { seed: a.seed, sampled_indices, checks };
    let csv = || {
        let mut out = String::from("check,param,value,bound,pass\n");
        for c in &report.checks {
            let _ = writeln!(out, "{},{},{},{},{}", c.name, c.param, c.value, c.bound, c.pass);
        }
        out
    };
    finish(command, format, pass, &report, csv)
}

fn run_partial_sums(command: &Command, a: &PartialSumArgs, format: Format) -> Result<Outcome> {
    let rows: Vec<PartialSumScan> = (a.k.first..=a.k.last).into_par_iter().map(eigen::lemma3_bound_check).collect::<Result<_>>()?;
    let pass = rows.iter().all(|r| r.pass);
    let csv = || {
        let mut out = format!("{}\n", PartialSumScan::csv_header());
        for r in &rows {
            out.push_str(&r.csv_row());
            out.push('\n');
        }
        out
    };
    finish(command, format, pass, &rows, csv)
}

#[derive(Debug, Clone, Serialize)]
struct UniformRecurrenceReport {
    report: RecurrenceReport,
    classification: Classification,
    uniform_gap: u64,
    uniform_gap_double_horizon: u64,
    gap_stable: bool,
    conjugacy_residual: f64,
    conjugacy_residual_at: u64,
}

/// Residual ceiling for the iterated-versus-reduced rotation comparison.
const CONJUGACY_BOUND: f64 = 1e-9;

fn run_uniform_recurrence(command: &Command, a: &UniformRecurrenceArgs, format: Format) -> Result<Outcome> {
    let weights = a.weights.clone().unwrap_or_else(|| vec![1.0; a.angles.len()]);
    let sum = FiniteEigenSum::new(a.angles.clone(), weights)?;
    let (report, trace) = recurrence::eigensum_report(&sum, a.epsilon, a.horizon)?;
    let uniform_gap = report.uniform_gap();
    let uniform_gap_double_horizon = recurrence::uniform_gap_scan(&sum, a.epsilon, 2 * a.horizon)?;
    let gap_stable = uniform_gap == uniform_gap_double_horizon && report.count > 0;
    let (conjugacy_residual, conjugacy_residual_at) = recurrence::torus_conjugacy_sweep(&sum, a.horizon);
    let pass = gap_stable && uniform_gap < a.horizon && conjugacy_residual <= CONJUGACY_BOUND;
    let classification = recurrence::classify(&report);
    let csv = || report.csv(&trace);
    let out = UniformRecurrenceReport {
        report: report.clone(),
        classification,
        uniform_gap,
        uniform_gap_double_horizon,
        gap_stable,
        conjugacy_residual,
        conjugacy_residual_at,
    };
    finish(command, format, pass, &out, csv)
}

#[derive(Debug, Clone, Serialize)]
struct ZetaReport {
    grid: StripGrid,
    epsilon: f64,
    epsilon_from_first_shift: bool,
    identity_residual_max: f64,
    identity_bound: f64,
    scan: ZetaScan,
}

fn run_zeta(command: &Command, a: &ZetaArgs, format: Format) -> Result<Outcome> {
    if !(1..=zeta_orbit::MAX_HORIZON).contains(&a.horizon) {
        return Err(Error::Config(format!("--horizon must be in 1..={}", zeta_orbit::MAX_HORIZON)));
    }
    if let Some(e) = a.epsilon {
        if e.is_nan() || e <= 0.0 {
            return Err(Error::Config(format!("--epsilon must be > 0, got {e}")));
        }
    }
    let grid = StripGrid::new((a.re_min, a.re_max), (a.im_min, a.im_max), a.grid.re, a.grid.im, a.tol)?;
    let identity_residual_max =
        grid.points().par_iter().map(|&s| zeta_orbit::identity_residual(s)).collect::<Result<Vec<_>>>()?.into_iter().fold(0.0, f64::max);
    let (epsilon, epsilon_from_first_shift) = match a.epsilon {
        Some(e) => (e, false),
        None => (2.0 * zeta_orbit::orbit_sup_distance(&grid, 1, a.tol)?, true),
    };
    let scan = zeta_orbit::recurrence_scan(&grid, epsilon, a.horizon, a.tol)?;
    let identity_bound = 1e-8;
    let pass = identity_residual_max <= identity_bound;
    let csv = || scan.csv();
    let report =
        ZetaReport { grid: grid.clone(), epsilon, epsilon_from_first_shift, identity_residual_max, identity_bound, scan: scan.clone() };
    finish(command, format, pass, &report, csv)
}

/// Exit code for a library error: 2 for bad inputs, 1 for numerical failure.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Config(_) | Error::Layout(_) | Error::OutOfRange(_) | Error::Domain(_) | Error::Truncation { .. } => 2,
        Error::Overflow { .. } | Error::Accuracy { .. } | Error::Scan { .. } => 1,
    }
}

fn configure_threads() -> Result<()> {
    let Ok(value) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let threads: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|&t| t >= 1)
        .ok_or_else(|| Error::Config(format!("{THREADS_ENV} must be a positive integer, got {value:?}")))?;
    // a second call inside one process (tests) keeps the first pool
    let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
    Ok(())
}

/// Parses `args`, runs the command and returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    if let Err(e) = configure_threads() {
        eprintln!("error: {e}");
        return 2;
    }
    let outcome = match run(&cli.command, cli.format) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return exit_code(&e);
        }
    };
    let written = match &cli.output {
        Some(path) => std::fs::write(path, &outcome.text).map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => {
            use std::io::Write;
            let mut out = std::io::stdout().lock();
            out.write_all(outcome.text.as_bytes()).and_then(|_| out.flush()).map_err(|e| format!("cannot write report: {e}"))
        }
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return 2;
    }
    if outcome.pass {
        0
    } else {
        1
    }
}
