//! Batch front end for the sumset kernel: reads set descriptions, runs one
//! check or the bundled suite, and renders deterministic JSON or CSV.
//!
//! Exit codes: 0 when every check passes, 1 when some check fails, 2 for
//! malformed input or arguments, 3 when a set exceeds a dimension cap.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use sumset_core::bundles::{
    lemma1_cases, lemma2_bodies, random_lattice_set, random_polytope, rng, sphere_hull, theorem_cases,
    theorem_grid_case,
};
use sumset_core::checks::{
    aggregate, check_brunn_minkowski, check_koester_katz, check_koester_katz_exhaustive, check_lemma1,
    check_lemma2, check_ruzsa_triangle, check_theorem, lemma1_default_step, Body, CheckReport, Condition, Quantity,
    TheoremForm,
};
use sumset_core::geometry::{DifferenceBody, MembershipOracle};
use sumset_core::measure::{volume_exact_q, volume_mc, BoundingBox};
use sumset_core::scalar::{self, fmt_f64, serde_q, Q};
use sumset_core::sets::json::SetDescription;
use sumset_core::sets::{GridSet, LatticeSet, VPolytope};
use sumset_core::sigma::{
    beta_identity_check, default_alphas, log_inequality_check, sigma, sigma_chain, sigma_enclosure, sigma_sweep,
    sweep_grid, SigmaChain, SigmaParams, DEFAULT_PRECISION,
};
use sumset_core::simplex::{
    lattice_diff_count, simplex_report, tightness_sweep, trinomial_sum, SimplexReport, TightnessTable,
};
use sumset_core::Error;

pub const DEFAULT_SEED: u64 = 42;
pub const DEFAULT_SAMPLES: u64 = 1_000_000;
pub const DEFAULT_TRIALS: u64 = 200;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_MALFORMED: i32 = 2;
pub const EXIT_DIMENSION_CAP: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Ruzsa,
    Kk,
    Lemma1,
    Lemma2,
    Bm,
    Theorem,
    Sigma,
    Simplex,
    Suite,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Csv,
}

/// Per-command arguments. Unset fields take the documented defaults.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct CommandOptions {
    /// Translation for `kk`, in lattice units or grid cells.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x: Option<Vec<i64>>,
    /// Homothety parameter for `lemma2` (default 1/2).
    #[serde(default, skip_serializing_if = "Option::is_none", with = "serde_q::option")]
    pub r: Option<Q>,
    /// Sampled translations for `lemma2` (default 200).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trials: Option<u64>,
    /// Form for `theorem`; every applicable form when unset.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub form: Option<TheoremForm>,
    /// `n` for `sigma` and `simplex`: a single value or `lo..hi` (inclusive).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<String>,
    /// `alpha` for `sigma` (default 1).
    #[serde(default, skip_serializing_if = "Option::is_none", with = "serde_q::option")]
    pub alpha: Option<Q>,
    /// Bits of precision for `sigma` (default 128).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub precision: Option<u32>,
    /// Side length for `simplex` (default 1).
    #[serde(default, rename = "L", skip_serializing_if = "Option::is_none", with = "serde_q::option")]
    pub l: Option<Q>,
    /// Largest `n` of the `simplex` tightness sweep.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sweep: Option<u64>,
}

/// Everything a run depends on. Serializing it and running it again
/// reproduces the report byte for byte.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct RunConfig {
    pub command: Command,
    #[serde(default)]
    pub inputs: Vec<PathBuf>,
    #[serde(default = "default_seed")]
    pub seed: u64,
    /// Quadrature step for `lemma1`; derived from the inputs when unset.
    #[serde(default, skip_serializing_if = "Option::is_none", with = "serde_q::option")]
    pub grid_step: Option<Q>,
    /// Monte Carlo samples for the suite's volume cross-check.
    #[serde(default = "default_samples")]
    pub samples: u64,
    #[serde(default = "default_c_budget", with = "serde_q")]
    pub c_budget: Q,
    #[serde(default = "default_format")]
    pub output_format: OutputFormat,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output_path: Option<PathBuf>,
    #[serde(default)]
    pub options: CommandOptions,
}

fn default_seed() -> u64 {
    DEFAULT_SEED
}

fn default_samples() -> u64 {
    DEFAULT_SAMPLES
}

fn default_c_budget() -> Q {
    sumset_core::checks::default_c_budget()
}

fn default_format() -> OutputFormat {
    OutputFormat::Json
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        RunConfig {
            command,
            inputs: Vec::new(),
            seed: DEFAULT_SEED,
            grid_step: None,
            samples: DEFAULT_SAMPLES,
            c_budget: default_c_budget(),
            output_format: OutputFormat::Json,
            output_path: None,
            options: CommandOptions::default(),
        }
    }
}

#[derive(Debug)]
pub enum CliError {
    /// Unreadable or malformed input, or invalid arguments.
    Input(String),
    /// A set beyond the exact-path dimension cap.
    DimensionCap(String),
    /// Failure writing the report.
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) | CliError::Io(_) => EXIT_MALFORMED,
            CliError::DimensionCap(_) => EXIT_DIMENSION_CAP,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(m) => write!(f, "invalid input: {m}"),
            CliError::DimensionCap(m) => write!(f, "{m}"),
            CliError::Io(m) => write!(f, "i/o error: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::DimensionCap { .. } => CliError::DimensionCap(e.to_string()),
            other => CliError::Input(other.to_string()),
        }
    }
}

fn input_err(msg: impl Into<String>) -> CliError {
    CliError::Input(msg.into())
}

/// A finished run: the rendered report and the exit code it implies.
#[derive(Debug, Clone, PartialEq)]
pub struct RunOutput {
    pub exit_code: i32,
    pub document: String,
}

#[derive(Debug, Clone, Serialize)]
struct InputHash {
    path: PathBuf,
    sha256: String,
}

#[derive(Debug, Clone, Serialize)]
struct SigmaRow {
    n: u64,
    #[serde(with = "serde_q")]
    alpha: Q,
    #[serde(rename = "Delta")]
    delta: u64,
    sigma: Quantity,
    #[serde(rename = "lowerBound")]
    lower_bound: Quantity,
    /// `sigma / lowerBound`.
    ratio: f64,
    #[serde(rename = "geometricSum")]
    geometric_sum: Quantity,
    #[serde(rename = "sigmaOverGeometric")]
    sigma_over_geometric: f64,
    pass: bool,
}

impl From<&SigmaChain> for SigmaRow {
    fn from(c: &SigmaChain) -> Self {
        SigmaRow {
            n: c.n,
            alpha: c.alpha.clone(),
            delta: c.delta,
            sigma: c.sigma.quantity(),
            lower_bound: Quantity::enclosure(&c.middle),
            ratio: c.sigma.approx() / c.middle.mid_f64(),
            geometric_sum: Quantity::enclosure(&c.geometric),
            sigma_over_geometric: c.sigma_ratio(),
            pass: c.chain_holds() && c.geometric_bound_holds(),
        }
    }
}

/// Results of one run, before rendering.
enum Outcome {
    Checks(Vec<CheckReport>),
    Sigma(Vec<SigmaRow>),
    Simplex { reports: Vec<SimplexReport>, tightness: Option<TightnessTable> },
}

impl Outcome {
    fn pass(&self) -> bool {
        match self {
            Outcome::Checks(r) => r.iter().all(|c| c.pass),
            Outcome::Sigma(rows) => rows.iter().all(|r| r.pass),
            Outcome::Simplex { reports, .. } => reports.iter().all(|r| r.identities_hold()),
        }
    }
}

/// Runs `config` and renders the report without writing it anywhere.
pub fn run(config: &RunConfig) -> Result<RunOutput, CliError> {
    let hashes = config
        .inputs
        .iter()
        .map(|p| {
            let bytes = std::fs::read(p).map_err(|e| input_err(format!("{}: {e}", p.display())))?;
            Ok(InputHash { path: p.clone(), sha256: hex::encode(Sha256::digest(&bytes)) })
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    let body = match config.command {
        Command::Ruzsa => Outcome::Checks(vec![run_ruzsa(config)?]),
        Command::Kk => Outcome::Checks(vec![run_kk(config)?]),
        Command::Lemma1 => Outcome::Checks(vec![run_lemma1(config)?]),
        Command::Lemma2 => Outcome::Checks(vec![run_lemma2(config)?]),
        Command::Bm => Outcome::Checks(vec![run_bm(config)?]),
        Command::Theorem => Outcome::Checks(run_theorem(config)?),
        Command::Sigma => Outcome::Sigma(run_sigma(config)?),
        Command::Simplex => run_simplex(config)?,
        Command::Suite => Outcome::Checks(run_suite(config)?),
    };
    let pass = body.pass();
    let document = match config.output_format {
        OutputFormat::Json => render_json(config, &hashes, &body, pass)?,
        OutputFormat::Csv => render_csv(&body),
    };
    Ok(RunOutput { exit_code: if pass { EXIT_PASS } else { EXIT_FAIL }, document })
}

/// Runs `config`, writes the report to `outputPath` (or stdout) and returns
/// the exit code. Errors are reported on stderr.
pub fn execute(config: &RunConfig) -> i32 {
    let result = run(config).and_then(|out| {
        match &config.output_path {
            Some(path) => std::fs::write(path, &out.document).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?,
            None => print!("{}", out.document),
        }
        Ok(out.exit_code)
    });
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("sumset: {e}");
            e.exit_code()
        }
    }
}

/// Reads a `RunConfig` from a JSON file: either a bare config or a report
/// that embeds one under `"config"`.
pub fn load_config(path: &Path) -> Result<RunConfig, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| input_err(format!("{}: {e}", path.display())))?;
    let value: Value = serde_json::from_str(&text).map_err(|e| input_err(format!("{}: {e}", path.display())))?;
    let value = match value.get("config") {
        Some(c) if value.get("command").is_none() => c.clone(),
        _ => value,
    };
    serde_json::from_value(value).map_err(|e| input_err(format!("{}: {e}", path.display())))
}

fn render_json(config: &RunConfig, hashes: &[InputHash], body: &Outcome, pass: bool) -> Result<String, CliError> {
    let mut doc = json!({
        "tool": "sumset",
        "version": env!("CARGO_PKG_VERSION"),
        "config": config,
        "inputHashes": hashes,
        "pass": pass,
    });
    match body {
        Outcome::Checks(reports) => doc["reports"] = json!(reports),
        Outcome::Sigma(rows) => doc["sigma"] = json!(rows),
        Outcome::Simplex { reports, tightness } => {
            doc["simplex"] = json!(reports);
            if let Some(t) = tightness {
                doc["tightness"] = json!(t);
            }
        }
    }
    let mut text = serde_json::to_string_pretty(&doc).map_err(|e| CliError::Io(e.to_string()))?;
    text.push('\n');
    Ok(text)
}

/// Floats with 17 significant digits, rationals as `p/q`.
fn csv_quantity(q: &Quantity) -> String {
    match q {
        Quantity::Exact { value } => value.to_string(),
        other => fmt_f64(other.approx()),
    }
}

fn csv_opt(x: Option<f64>) -> String {
    x.map(fmt_f64).unwrap_or_default()
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn render_csv(body: &Outcome) -> String {
    let mut lines: Vec<String> = Vec::new();
    match body {
        Outcome::Checks(reports) => {
            lines.push("name,pass,lhs,rhs,ratio,errorBudget".into());
            for r in reports {
                lines.push(
                    [
                        csv_field(&r.name),
                        r.pass.to_string(),
                        csv_quantity(&r.lhs),
                        csv_quantity(&r.rhs),
                        csv_opt(r.ratio),
                        r.error_budget.to_string(),
                    ]
                    .join(","),
                );
            }
        }
        Outcome::Sigma(rows) => {
            lines.push("n,alpha,sigma,lowerbound,ratio,Delta,geometricSum,sigmaOverGeometric,sigmaExact,pass".into());
            for r in rows {
                let exact = match &r.sigma {
                    Quantity::Exact { value } => value.to_string(),
                    _ => String::new(),
                };
                lines.push(
                    [
                        r.n.to_string(),
                        r.alpha.to_string(),
                        fmt_f64(r.sigma.approx()),
                        fmt_f64(r.lower_bound.approx()),
                        fmt_f64(r.ratio),
                        r.delta.to_string(),
                        fmt_f64(r.geometric_sum.approx()),
                        fmt_f64(r.sigma_over_geometric),
                        exact,
                        r.pass.to_string(),
                    ]
                    .join(","),
                );
            }
        }
        Outcome::Simplex { reports, tightness } => {
            lines.push("n,L,volA,volSum,volDiff,sumRatio,diffRatio,tightness,kernelVerified".into());
            for r in reports {
                lines.push(
                    [
                        r.n.to_string(),
                        r.l.to_string(),
                        r.vol_a.to_string(),
                        r.vol_sum.to_string(),
                        r.vol_diff.to_string(),
                        r.sum_ratio.to_string(),
                        r.diff_ratio.to_string(),
                        fmt_f64(r.tightness),
                        r.kernel_verified.to_string(),
                    ]
                    .join(","),
                );
            }
            if let Some(t) = tightness {
                lines.push(String::new());
                lines.push("n,tightnessLo,tightnessHi,tightness".into());
                for row in &t.rows {
                    lines.push(format!("{},{},{},{}", row.n, row.lo, row.hi, fmt_f64(row.value)));
                }
            }
        }
    }
    let mut out = lines.join("\n");
    out.push('\n');
    out
}

fn read_sets(config: &RunConfig, expected: usize) -> Result<Vec<SetDescription>, CliError> {
    if config.inputs.len() != expected {
        return Err(input_err(format!(
            "{:?} needs {expected} input files, got {}",
            config.command,
            config.inputs.len()
        )));
    }
    config
        .inputs
        .iter()
        .map(|p| {
            let text = std::fs::read_to_string(p).map_err(|e| input_err(format!("{}: {e}", p.display())))?;
            SetDescription::parse(&text).map_err(|e| match e {
                Error::DimensionCap { .. } => CliError::from(e),
                other => input_err(format!("{}: {other}", p.display())),
            })
        })
        .collect()
}

fn expect_polytope(d: SetDescription, role: &str) -> Result<VPolytope, CliError> {
    match d {
        SetDescription::VPolytope(p) => Ok(p),
        other => Err(input_err(format!("{role} must be a vpolytope, got {}", other.kind()))),
    }
}

fn expect_lattice(d: SetDescription, role: &str) -> Result<LatticeSet, CliError> {
    match d {
        SetDescription::Lattice(l) => Ok(l),
        other => Err(input_err(format!("{role} must be a lattice set, got {}", other.kind()))),
    }
}

fn expect_body(d: SetDescription, role: &str) -> Result<Body, CliError> {
    match d {
        SetDescription::VPolytope(p) => Ok(Body::Convex(p)),
        SetDescription::Grid(g) => Ok(Body::Grid(g)),
        other => Err(input_err(format!("{role} must be a vpolytope or grid, got {}", other.kind()))),
    }
}

fn run_ruzsa(config: &RunConfig) -> Result<CheckReport, CliError> {
    let mut sets = read_sets(config, 3)?.into_iter();
    let a = expect_lattice(sets.next().unwrap(), "A")?;
    let b = expect_lattice(sets.next().unwrap(), "B")?;
    let c = expect_lattice(sets.next().unwrap(), "C")?;
    Ok(check_ruzsa_triangle(&a, &b, &c)?)
}

fn run_kk(config: &RunConfig) -> Result<CheckReport, CliError> {
    let mut sets = read_sets(config, 2)?.into_iter();
    let (a, b) = (sets.next().unwrap(), sets.next().unwrap());
    let x = config.options.x.as_deref();
    let report = match (a, b) {
        (SetDescription::Lattice(a), SetDescription::Lattice(b)) => match x {
            Some(x) => check_koester_katz(&a, &b, x)?,
            None => check_koester_katz_exhaustive(&a, &b)?,
        },
        (SetDescription::Grid(a), SetDescription::Grid(b)) => kk_grid(&a, &b, x)?,
        (a, b) => {
            return Err(input_err(format!(
                "kk needs two lattice sets or two grids, got {} and {}",
                a.kind(),
                b.kind()
            )))
        }
    };
    Ok(report)
}

fn kk_grid(a: &GridSet, b: &GridSet, x: Option<&[i64]>) -> Result<CheckReport, Error> {
    match x {
        Some(x) => check_koester_katz(a, b, x),
        None => check_koester_katz_exhaustive(a, b),
    }
}

fn run_lemma1(config: &RunConfig) -> Result<CheckReport, CliError> {
    let mut sets = read_sets(config, 2)?.into_iter();
    let a = expect_polytope(sets.next().unwrap(), "A")?;
    let b = expect_body(sets.next().unwrap(), "B")?;
    let hx = match (&config.grid_step, &b) {
        (Some(h), _) => h.clone(),
        (None, Body::Grid(g)) => g.cell().clone(),
        (None, Body::Convex(_)) => lemma1_default_step(&a),
    };
    Ok(check_lemma1(&a, &b, &hx)?)
}

fn run_lemma2(config: &RunConfig) -> Result<CheckReport, CliError> {
    let a = expect_polytope(read_sets(config, 1)?.remove(0), "A")?;
    let r = config.options.r.clone().unwrap_or_else(|| scalar::ratio(1, 2));
    let trials = config.options.trials.unwrap_or(DEFAULT_TRIALS);
    Ok(check_lemma2(&a, &r, trials, config.seed)?)
}

fn run_bm(config: &RunConfig) -> Result<CheckReport, CliError> {
    let mut sets = read_sets(config, 2)?.into_iter();
    let a = expect_polytope(sets.next().unwrap(), "A")?;
    let b = expect_polytope(sets.next().unwrap(), "B")?;
    Ok(check_brunn_minkowski(&a, &b)?)
}

fn run_theorem(config: &RunConfig) -> Result<Vec<CheckReport>, CliError> {
    let mut sets = read_sets(config, 2)?.into_iter();
    let a = expect_polytope(sets.next().unwrap(), "A")?;
    let b = expect_body(sets.next().unwrap(), "B")?;
    let forms = match config.options.form {
        Some(f) => vec![f],
        None => {
            let (mu_a, mu_b) = (volume_exact_q(&a)?, b.measure()?);
            TheoremForm::ALL.into_iter().filter(|f| f.applies(&mu_a, &mu_b)).collect()
        }
    };
    Ok(forms.into_iter().map(|f| check_theorem(&a, &b, f, &config.c_budget)).collect::<Result<_, _>>()?)
}

/// `"7"` or `"3..10"` (inclusive).
pub fn parse_n_range(text: &str) -> Result<Vec<u64>, CliError> {
    let num = |s: &str| s.trim().parse::<u64>().map_err(|_| input_err(format!("bad n {text:?}")));
    let ns: Vec<u64> = match text.split_once("..") {
        Some((lo, hi)) => {
            let hi = hi.strip_prefix('=').unwrap_or(hi);
            (num(lo)?..=num(hi)?).collect()
        }
        None => vec![num(text)?],
    };
    if ns.is_empty() || ns.contains(&0) {
        return Err(input_err(format!("n range {text:?} must be nonempty and start at 1 or above")));
    }
    Ok(ns)
}

fn run_sigma(config: &RunConfig) -> Result<Vec<SigmaRow>, CliError> {
    let ns = parse_n_range(config.options.n.as_deref().unwrap_or("1"))?;
    let alpha = config.options.alpha.clone().unwrap_or_else(|| scalar::q(1));
    let bits = config.options.precision.unwrap_or(DEFAULT_PRECISION);
    ns.into_iter()
        .map(|n| {
            let chain = sigma_chain(&SigmaParams::new(n, alpha.clone())?, bits)?;
            Ok(SigmaRow::from(&chain))
        })
        .collect()
}

fn run_simplex(config: &RunConfig) -> Result<Outcome, CliError> {
    let l = config.options.l.clone().unwrap_or_else(|| scalar::q(1));
    if l <= scalar::q(0) {
        return Err(input_err(format!("L must be positive, got {l}")));
    }
    let tightness = config.options.sweep.map(tightness_sweep).transpose()?;
    let ns = match (&config.options.n, config.options.sweep) {
        (Some(text), _) => parse_n_range(text)?,
        (None, Some(nmax)) => (1..=nmax).collect(),
        (None, None) => vec![2],
    };
    let reports = ns
        .into_iter()
        .map(|n| simplex_report(n as usize, &l))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Outcome::Simplex { reports, tightness })
}

type SuiteEntry = fn(&RunConfig) -> Result<CheckReport, Error>;

/// The bundled regression set, keyed (and reported) by check name.
fn suite_entries() -> BTreeMap<&'static str, SuiteEntry> {
    let entries: [(&'static str, SuiteEntry); 13] = [
        ("beta_identity", suite_beta),
        ("brunn_minkowski", suite_bm),
        ("koester_katz", suite_kk),
        ("lemma1_quadrature", suite_lemma1),
        ("lemma2_slices", suite_lemma2),
        ("log_inequality", |_| log_inequality_check(1001, DEFAULT_PRECISION)),
        ("monte_carlo_volume", suite_mc),
        ("ruzsa_triangle", suite_ruzsa),
        ("sigma_chain", suite_sigma),
        ("simplex_identities", suite_simplex),
        ("simplex_lattice_counts", suite_lattice),
        ("simplex_tightness", suite_tightness),
        ("theorem_forms", suite_theorem),
    ];
    entries.into_iter().collect()
}

fn run_suite(config: &RunConfig) -> Result<Vec<CheckReport>, CliError> {
    suite_entries()
        .into_iter()
        .map(|(name, f)| {
            let mut report = f(config)?;
            report.name = name.to_string();
            Ok(report)
        })
        .collect()
}

/// One aggregate per group, naming the failed cases.
fn grouped(name: &str, cases: Vec<(String, CheckReport)>) -> CheckReport {
    let reports: Vec<CheckReport> = cases.iter().map(|(_, r)| r.clone()).collect();
    let mut agg = aggregate(name, &reports);
    let failed: Vec<&str> = cases.iter().filter(|(_, r)| !r.pass).map(|(n, _)| n.as_str()).collect();
    agg.details["failedCases"] = json!(failed);
    agg
}

fn suite_beta(_: &RunConfig) -> Result<CheckReport, Error> {
    let mut cases = Vec::new();
    for n in 1..=50 {
        for k in 1..=n {
            cases.push((format!("n={n} k={k}"), beta_identity_check(n, k)?));
        }
    }
    Ok(grouped("beta_identity", cases))
}

fn suite_bm(config: &RunConfig) -> Result<CheckReport, Error> {
    let mut r = rng(config.seed);
    let mut cases = Vec::new();
    for i in 0..20 {
        let dim = 1 + i % 4;
        let a = random_polytope(&mut r, dim, dim + 3, 4);
        let b = random_polytope(&mut r, dim, dim + 3, 4);
        cases.push((format!("pair {i} n={dim}"), check_brunn_minkowski(&a, &b)?));
    }
    Ok(grouped("brunn_minkowski", cases))
}

fn suite_kk(config: &RunConfig) -> Result<CheckReport, Error> {
    let mut r = rng(config.seed);
    let mut cases = Vec::new();
    for i in 0..20 {
        let dim = 1 + i % 2;
        let range = if dim == 1 { 15 } else { 4 };
        let a = random_lattice_set(&mut r, dim, 20, range);
        let b = random_lattice_set(&mut r, dim, 20, range);
        cases.push((format!("pair {i} Z^{dim}"), check_koester_katz_exhaustive(&a, &b)?));
    }
    Ok(grouped("koester_katz", cases))
}

fn suite_lemma1(_: &RunConfig) -> Result<CheckReport, Error> {
    let cases = lemma1_cases()
        .into_iter()
        .map(|c| Ok((c.name.clone(), check_lemma1(&c.a, &c.b, &c.hx)?)))
        .collect::<Result<Vec<_>, Error>>()?;
    Ok(grouped("lemma1_quadrature", cases))
}

fn suite_lemma2(config: &RunConfig) -> Result<CheckReport, Error> {
    let mut cases = Vec::new();
    for (name, a) in lemma2_bodies() {
        for r in [scalar::q(0), scalar::ratio(1, 4), scalar::ratio(1, 2), scalar::ratio(3, 4)] {
            cases.push((format!("{name} r={r}"), check_lemma2(&a, &r, 50, config.seed)?));
        }
    }
    Ok(grouped("lemma2_slices", cases))
}

/// Monte Carlo volume of a difference body against its exact volume,
/// passing within five standard errors.
fn suite_mc(config: &RunConfig) -> Result<CheckReport, Error> {
    let body = sphere_hull(2024, 8).difference_body()?;
    let exact = volume_exact_q(&body)?;
    let oracle = MembershipOracle::for_polytope(&body, "difference body of the sphere hull")?;
    let (lo, hi) = body.bounding_box();
    let bx = BoundingBox::new(lo.to_f64(), hi.to_f64())?;
    let est = volume_mc(&oracle, &bx, config.samples, config.seed)?;
    let err = (est.value_f64() - scalar::to_f64(&exact)).abs();
    Ok(CheckReport::new(
        "monte_carlo_volume",
        Quantity::Estimate { value: err, stderr: est.stderr },
        Quantity::Estimate { value: 5.0 * est.stderr, stderr: 0.0 },
        scalar::q(0),
    )
    .with_input(oracle.description().to_string())
    .with_param("samples", config.samples)
    .with_param("seed", config.seed)
    .with_details(json!({ "exact": exact.to_string(), "estimate": Quantity::volume(&est) })))
}

fn suite_ruzsa(config: &RunConfig) -> Result<CheckReport, Error> {
    let mut r = rng(config.seed);
    let mut cases = Vec::new();
    for i in 0..200 {
        let dim = 1 + i % 2;
        let range = if dim == 1 { 12 } else { 4 };
        let [a, b, c] = [(); 3].map(|_| random_lattice_set(&mut r, dim, 12, range));
        cases.push((format!("triple {i} Z^{dim}"), check_ruzsa_triangle(&a, &b, &c)?));
    }
    Ok(grouped("ruzsa_triangle", cases))
}

/// Exact sigma against its enclosure for n <= 30, then the chain over a
/// sweep of n and alpha.
fn suite_sigma(_: &RunConfig) -> Result<CheckReport, Error> {
    let mut mismatches = Vec::new();
    for n in 1..=30 {
        let params = SigmaParams::new(n, scalar::q(1))?;
        let exact = sigma(&params, DEFAULT_PRECISION)?.exact.expect("rational omega");
        if !sigma_enclosure(&params, DEFAULT_PRECISION)?.contains(&exact) {
            mismatches.push(n);
        }
    }
    let (_, summary) = sigma_sweep(&sweep_grid(500), &default_alphas(), DEFAULT_PRECISION)?;
    let failures = summary.chain_failures.len() + summary.geometric_failures.len() + mismatches.len();
    let fmt_points = |v: &[(u64, Q)]| v.iter().map(|(n, a)| format!("n={n} alpha={a}")).collect::<Vec<_>>();
    Ok(CheckReport::new("sigma_chain", Quantity::int(failures as i64), Quantity::int(0), scalar::q(0))
        .with_param("points", summary.points)
        .with_param("nmax", 500)
        .with_details(json!({
            "enclosureMismatches": mismatches,
            "chainFailures": fmt_points(&summary.chain_failures),
            "geometricFailures": fmt_points(&summary.geometric_failures),
            "minSigmaOverGeometric": summary.min_sigma_ratio,
            "maxSigmaOverGeometric": summary.max_sigma_ratio,
            "sigmaOverSqrtN": summary.sqrt_bracket,
        })))
}

fn suite_simplex(_: &RunConfig) -> Result<CheckReport, Error> {
    let mut cases = Vec::new();
    for n in 1..=6 {
        for l in [scalar::q(1), scalar::q(3), scalar::ratio(7, 2)] {
            let r = simplex_report(n, &l)?;
            let ok = r.kernel_verified && r.identities_hold();
            let report = CheckReport::new(
                "simplex",
                Quantity::exact(r.diff_ratio.clone()),
                Quantity::exact(r.diff_ratio.clone()),
                scalar::q(0),
            )
            .with_condition(Condition::holds("sumRatio = 2^n and diffRatio = C(2n,n)", ok));
            cases.push((format!("n={n} L={l}"), report));
        }
    }
    Ok(grouped("simplex_identities", cases))
}

fn suite_lattice(_: &RunConfig) -> Result<CheckReport, Error> {
    let mut cases = Vec::new();
    for n in 1..=3usize {
        for l in 0..=10u64 {
            let brute = Q::from_integer(lattice_diff_count(n, l)?.into());
            let formula = scalar::uint_to_q(&trinomial_sum(n as u64, l));
            let report = CheckReport::new(
                "lattice_count",
                Quantity::exact(brute.clone()),
                Quantity::exact(formula.clone()),
                scalar::q(0),
            )
            .with_condition(Condition::holds("brute force = trinomial sum", brute == formula));
            cases.push((format!("n={n} L={l}"), report));
        }
    }
    Ok(grouped("simplex_lattice_counts", cases))
}

fn suite_tightness(_: &RunConfig) -> Result<CheckReport, Error> {
    let t = tightness_sweep(30)?;
    let gap = scalar::from_f64(t.last_gap)?;
    Ok(CheckReport::new("simplex_tightness", Quantity::exact(gap), Quantity::exact(scalar::ratio(1, 50)), scalar::q(0))
        .with_condition(Condition::holds(
            "tightness within [0.28, 0.60] for n = 1..30",
            t.min >= 0.28 && t.max <= 0.60,
        ))
        .with_param("nmax", 30)
        .with_details(json!({ "min": t.min, "max": t.max, "limit": t.limit })))
}

fn suite_theorem(config: &RunConfig) -> Result<CheckReport, Error> {
    let mut cases = Vec::new();
    for case in theorem_cases().into_iter().chain([theorem_grid_case()]) {
        let (mu_a, mu_b) = (volume_exact_q(&case.a)?, case.b.measure()?);
        for form in TheoremForm::ALL.into_iter().filter(|f| f.applies(&mu_a, &mu_b)) {
            cases.push((format!("{} {}", case.name, form.label()), check_theorem(&case.a, &case.b, form, &config.c_budget)?));
        }
    }
    Ok(grouped("theorem_forms", cases))
}
