use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use sumset_cli::{execute, load_config, Command, CommandOptions, OutputFormat, RunConfig, EXIT_MALFORMED};
use sumset_core::checks::TheoremForm;
use sumset_core::scalar::{parse_rational, Q};

#[derive(Parser)]
#[command(name = "sumset", version, about = "Verify sumset and difference-body volume inequalities")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct Common {
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = sumset_cli::DEFAULT_SEED)]
    seed: u64,
    /// Quadrature step for lemma1, e.g. 1/16.
    #[arg(long, global = true, value_parser = rational)]
    grid_step: Option<Q>,
    /// Monte Carlo samples.
    #[arg(long, global = true, default_value_t = sumset_cli::DEFAULT_SAMPLES)]
    samples: u64,
    /// Largest accepted empirical constant for theorem checks.
    #[arg(long, global = true, value_parser = rational, default_value = "10")]
    c_budget: Q,
    /// Report format; sigma defaults to csv, everything else to json.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write the report here instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Cmd {
    /// |A-B| |C| <= |A+C| |C+B| for three lattice sets.
    Ruzsa { a: PathBuf, b: PathBuf, c: PathBuf },
    /// A_x + B is contained in (A+B)_x, for one x or every x in A-A.
    Kk {
        a: PathBuf,
        b: PathBuf,
        /// Translation such as "1,-2"; all of A-A when omitted.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        x: Option<Vec<i64>>,
    },
    /// Quadrature of the integral bound for A and B.
    Lemma1 { a: PathBuf, b: PathBuf },
    /// Slice volumes against (1-r)^n mu(A) at sampled x in r(A-A).
    Lemma2 {
        a: PathBuf,
        #[arg(long, value_parser = rational, default_value = "1/2")]
        r: Q,
        #[arg(long, default_value_t = sumset_cli::DEFAULT_TRIALS)]
        trials: u64,
    },
    /// Brunn-Minkowski for two convex polytopes.
    Bm { a: PathBuf, b: PathBuf },
    /// Empirical constants of the difference-body bound.
    Theorem {
        a: PathBuf,
        b: PathBuf,
        /// FULL, A_GE_B or B_GE_A; every applicable form when omitted.
        #[arg(long, value_parser = form)]
        form: Option<TheoremForm>,
    },
    /// The sigma sum and its lower-bound chain.
    Sigma {
        /// A single n or an inclusive range such as 1..100.
        #[arg(long, default_value = "1")]
        n: String,
        #[arg(long, value_parser = rational, default_value = "1")]
        alpha: Q,
        /// Bits of precision.
        #[arg(long, default_value_t = sumset_core::sigma::DEFAULT_PRECISION)]
        precision: u32,
    },
    /// Volumes of A, A+A and A-A for the simplex of side L.
    Simplex {
        /// A single n or an inclusive range; 1..=sweep when only --sweep is given.
        #[arg(long)]
        n: Option<String>,
        #[arg(long = "L", value_parser = rational, default_value = "1")]
        l: Q,
        /// Also tabulate sqrt(n) C(2n,n) / 4^n for n up to this value.
        #[arg(long)]
        sweep: Option<u64>,
    },
    /// The bundled regression suite.
    Suite,
    /// Re-run a saved configuration or report.
    Replay { config: PathBuf },
}

fn rational(s: &str) -> Result<Q, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

fn form(s: &str) -> Result<TheoremForm, String> {
    s.parse().map_err(|e: sumset_core::Error| e.to_string())
}

fn config_from(cli: Cli) -> Result<RunConfig, sumset_cli::CliError> {
    let mut options = CommandOptions::default();
    let (command, inputs) = match cli.command {
        Cmd::Replay { config } => return load_config(&config),
        Cmd::Ruzsa { a, b, c } => (Command::Ruzsa, vec![a, b, c]),
        Cmd::Kk { a, b, x } => {
            options.x = x;
            (Command::Kk, vec![a, b])
        }
        Cmd::Lemma1 { a, b } => (Command::Lemma1, vec![a, b]),
        Cmd::Lemma2 { a, r, trials } => {
            options.r = Some(r);
            options.trials = Some(trials);
            (Command::Lemma2, vec![a])
        }
        Cmd::Bm { a, b } => (Command::Bm, vec![a, b]),
        Cmd::Theorem { a, b, form } => {
            options.form = form;
            (Command::Theorem, vec![a, b])
        }
        Cmd::Sigma { n, alpha, precision } => {
            options.n = Some(n);
            options.alpha = Some(alpha);
            options.precision = Some(precision);
            (Command::Sigma, vec![])
        }
        Cmd::Simplex { n, l, sweep } => {
            options.n = n;
            options.l = Some(l);
            options.sweep = sweep;
            (Command::Simplex, vec![])
        }
        Cmd::Suite => (Command::Suite, vec![]),
    };
    let c = cli.common;
    let output_format = match (c.format, command) {
        (Some(Format::Json), _) => OutputFormat::Json,
        (Some(Format::Csv), _) | (None, Command::Sigma) => OutputFormat::Csv,
        (None, _) => OutputFormat::Json,
    };
    Ok(RunConfig {
        command,
        inputs,
        seed: c.seed,
        grid_step: c.grid_step,
        samples: c.samples,
        c_budget: c.c_budget,
        output_format,
        output_path: c.output,
        options,
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_MALFORMED as u8 } else { 0 });
        }
    };
    let code = match config_from(cli) {
        Ok(config) => execute(&config),
        Err(e) => {
            eprintln!("sumset: {e}");
            e.exit_code()
        }
    };
    ExitCode::from(code as u8)
}
