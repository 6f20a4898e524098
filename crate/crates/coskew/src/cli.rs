//! Command-line interface.
//!
//! Exit status: 0 on success, 2 on usage or input errors, 1 when `verify`
//! reports a failed check.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use coskew_core::{coskew_bound, to_data, CopulaSpec, EventSpec, Marginal, SeedSpec};
use serde::Serialize;

use crate::error::{AppError, Result};
use crate::experiments::{
    run_example1, run_figure1, run_figure2, uniform_grid, verify_propositions, ExperimentConfig, Metadata,
    DEFAULT_GRID_POINTS, DEFAULT_N, DEFAULT_SEED,
};
use crate::report::{file_name, write_csv, write_json, BoundsReport, Format, SampleJson, SampleTable, Table};
use crate::stats::{compute_stats, read_sample};

#[derive(Debug, Parser)]
#[command(
    name = "coskew",
    version,
    about = "Simulate copulas with controlled coskewness and estimate dependence statistics"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long, default_value_t = 0)]
    pub stream: u64,
    /// Output format: csv or json.
    #[arg(long, default_value = "csv")]
    pub format: Format,
    /// Omit run timings so repeated runs are byte-identical.
    #[arg(long)]
    pub deterministic: bool,
    /// Write `{experiment}-{seed}.{format}` here instead of stdout.
    #[arg(long)]
    pub out_dir: Option<PathBuf>,
}

impl Common {
    fn seed_spec(&self) -> SeedSpec {
        SeedSpec::new(self.seed, self.stream)
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Draw a sample and print the data columns.
    Sample {
        /// comonotonic, independence, max, min, mixture:L, mixingsum or gaussian:R12,R13,R23
        #[arg(long, default_value = "mixture:0.5")]
        copula: CopulaSpec,
        /// One token for all three columns or three comma-separated tokens:
        /// normal, uniform, laplace, t:DF, exp:RATE
        #[arg(long, default_value = "normal", value_parser = parse_marginals)]
        marginals: [Marginal; 3],
        #[arg(long, default_value_t = DEFAULT_N)]
        n: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Moments, correlations and coskewness of a CSV sample or a simulated one.
    Stats {
        /// Headed CSV file, or '-' for stdin; simulates when absent.
        #[arg(long)]
        input: Option<String>,
        #[arg(long, default_value = "mixture:0.5")]
        copula: CopulaSpec,
        /// Marginals of the simulated sample; with --input they switch ranks
        /// and exceedance thresholds to the given distributions.
        #[arg(long, value_parser = parse_marginals)]
        marginals: Option<[Marginal; 3]>,
        #[arg(long, default_value_t = DEFAULT_N)]
        n: usize,
        /// downside, exceed-upper:P or exceed-lower:P
        #[arg(long)]
        event: Option<EventSpec>,
        #[command(flatten)]
        common: Common,
    },
    /// Attainable coskewness range for three symmetric marginals.
    Bounds {
        #[arg(long, default_value = "normal", value_parser = parse_marginals)]
        marginals: [Marginal; 3],
        #[arg(long, default_value = "json")]
        format: Format,
    },
    /// Coskewness of the mixture copula across a λ grid.
    Figure1 {
        #[arg(long, default_value = "normal", value_parser = parse_marginals)]
        marginals: [Marginal; 3],
        #[arg(long, default_value_t = DEFAULT_N)]
        n: usize,
        #[arg(long, value_parser = parse_grid)]
        lambda_grid: Option<LambdaGrid>,
        #[command(flatten)]
        common: Common,
    },
    /// Event-conditional correlations of the mixture copula across a λ grid.
    Figure2 {
        #[arg(long, default_value = "normal", value_parser = parse_marginals)]
        marginals: [Marginal; 3],
        #[arg(long, default_value_t = DEFAULT_N)]
        n: usize,
        #[arg(long, value_parser = parse_grid)]
        lambda_grid: Option<LambdaGrid>,
        #[arg(long, default_value = "downside")]
        event: EventSpec,
        #[command(flatten)]
        common: Common,
    },
    /// Rank statistics of the comonotonic, mixing-sum and independence copulas.
    Example1 {
        #[arg(long, default_value_t = DEFAULT_N)]
        n: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Run the property checks; exits 1 if any fails.
    Verify {
        #[arg(long, default_value_t = DEFAULT_N)]
        n: usize,
        #[command(flatten)]
        common: Common,
    },
}

pub fn parse_marginals(s: &str) -> Result<[Marginal; 3], String> {
    let ms =
        s.split(',').map(|t| t.trim().parse::<Marginal>().map_err(|e| e.to_string())).collect::<Result<Vec<_>, _>>()?;
    match ms.as_slice() {
        [m] => Ok([*m; 3]),
        [a, b, c] => Ok([*a, *b, *c]),
        _ => Err(format!("expected 1 or 3 marginals, got {}", ms.len())),
    }
}

/// Comma-separated λ values.
#[derive(Debug, Clone, PartialEq)]
pub struct LambdaGrid(pub Vec<f64>);

pub fn parse_grid(s: &str) -> Result<LambdaGrid, String> {
    s.split(',')
        .map(|t| t.trim().parse::<f64>().map_err(|_| format!("not a number: {t:?}")))
        .collect::<Result<_, _>>()
        .map(LambdaGrid)
}

fn sweep_config(
    marginals: [Marginal; 3],
    n: usize,
    grid: Option<LambdaGrid>,
    event: EventSpec,
    common: &Common,
) -> ExperimentConfig {
    ExperimentConfig {
        n,
        lambda_grid: grid.map(|g| g.0).unwrap_or_else(|| uniform_grid(DEFAULT_GRID_POINTS)),
        marginals,
        seed: common.seed_spec(),
        event,
    }
}

fn open_output(name: &str, common: &Common) -> Result<Box<dyn Write>> {
    match &common.out_dir {
        Some(dir) => {
            std::fs::create_dir_all(dir)?;
            let path = dir.join(file_name(name, common.seed, common.format));
            Ok(Box::new(BufWriter::new(File::create(path)?)))
        }
        None => Ok(Box::new(BufWriter::new(io::stdout().lock()))),
    }
}

fn emit<T: Table + Serialize>(report: &T, name: &str, common: &Common) -> Result<()> {
    let mut out = open_output(name, common)?;
    match common.format {
        Format::Csv => write_csv(report, &mut out)?,
        Format::Json => write_json(report, &mut out)?,
    }
    out.flush()?;
    Ok(())
}

fn strip_runtime(m: &mut Metadata, common: &Common) {
    if common.deterministic {
        m.runtime_seconds = None;
    }
}

/// Runs a parsed command; `Ok(false)` means a verification check failed.
pub fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Sample { copula, marginals, n, common } => {
            let seed = common.seed_spec();
            let x = to_data(&copula.sample(n, seed)?, &marginals)?;
            let metadata = Metadata::new("sample", n, seed, &marginals, &copula.to_string());
            eprintln!(
                "coskew sample copula={copula} marginals={} n={n} seed={} stream={}",
                metadata.marginals.join(","),
                seed.seed,
                seed.stream
            );
            let mut out = open_output("sample", &common)?;
            match common.format {
                Format::Csv => write_csv(&SampleTable(&x), &mut out)?,
                Format::Json => write_json(&SampleJson { metadata: &metadata, columns: x.columns() }, &mut out)?,
            }
            out.flush()?;
        }
        Command::Stats { input, copula, marginals, n, event, common } => {
            let (names, x, source) = match input.as_deref() {
                Some("-") => {
                    let (h, x) = read_sample(io::stdin().lock())?;
                    (h, x, "stdin".to_string())
                }
                Some(path) => {
                    let (h, x) = read_sample(File::open(path)?)?;
                    (h, x, path.to_string())
                }
                None => {
                    let ms = marginals.unwrap_or([Marginal::StandardNormal; 3]);
                    let x = to_data(&copula.sample(n, common.seed_spec())?, &ms)?;
                    let names = (1..=3).map(|j| format!("x{j}")).collect();
                    (names, x, format!("copula={copula} seed={} stream={}", common.seed, common.stream))
                }
            };
            let ms = marginals.or(if input.is_none() { Some([Marginal::StandardNormal; 3]) } else { None });
            if ms.is_some() && x.d() != 3 {
                return Err(AppError::Input(format!("--marginals needs 3 columns, input has {}", x.d())));
            }
            eprintln!("coskew stats source={source} n={}", x.n());
            let report = compute_stats(names, &x, ms.as_ref(), event)?;
            emit(&report, "stats", &common)?;
        }
        Command::Bounds { marginals, format } => {
            let b = coskew_bound(&marginals)?;
            let report = BoundsReport::new(&marginals, &b);
            let mut out = io::stdout().lock();
            match format {
                Format::Csv => write_csv(&report, &mut out)?,
                Format::Json => write_json(&report, &mut out)?,
            }
        }
        Command::Figure1 { marginals, n, lambda_grid, common } => {
            let cfg = sweep_config(marginals, n, lambda_grid, EventSpec::DownsideSum, &common);
            let mut report = run_figure1(&cfg)?;
            strip_runtime(&mut report.metadata, &common);
            emit(&report, "figure1", &common)?;
        }
        Command::Figure2 { marginals, n, lambda_grid, event, common } => {
            let cfg = sweep_config(marginals, n, lambda_grid, event, &common);
            let mut report = run_figure2(&cfg)?;
            strip_runtime(&mut report.metadata, &common);
            emit(&report, "figure2", &common)?;
        }
        Command::Example1 { n, common } => {
            let mut report = run_example1(n, common.seed_spec())?;
            strip_runtime(&mut report.metadata, &common);
            for r in report.rows.iter().filter(|r| r.discrepancy) {
                eprintln!(
                    "note: {} rank correlations {:?} differ from the commonly reported {:?}",
                    r.copula,
                    r.rho_s_exact,
                    r.rho_s_reported.unwrap_or_default()
                );
            }
            emit(&report, "example1", &common)?;
        }
        Command::Verify { n, common } => {
            let mut report = verify_propositions(n, common.seed_spec())?;
            strip_runtime(&mut report.metadata, &common);
            {
                let mut out = io::stdout().lock();
                for c in &report.checks {
                    let status = if c.passed { "PASS" } else { "FAIL" };
                    writeln!(out, "{status} {} {}: {}", c.id, c.name, c.detail)?;
                }
            }
            if common.out_dir.is_some() {
                emit(&report, "verify", &common)?;
            }
            return Ok(report.all_passed());
        }
    }
    Ok(true)
}

pub fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
