//! `specreg` command line: generate test datasets, regularize noisy samples,
//! and run residual diagnostics.
//!
//! Exit codes: 0 on success, 2 for bad input, 3 when a diagnostic fails (the
//! report is still written), 4 when the design matrix is rank deficient, 1 for
//! anything else.

mod error;
mod io;

use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use specreg::diagnostics::{whiteness_report, DiagnosticsReport, ResidualSeries};
use specreg::problems::{by_name, NoiseSpec, DEFAULT_M, DEFAULT_SEED, DEFAULT_SIGMA, PROBLEM_NAMES};
use specreg::regularize::{
    discrete_svd_pipeline, run_pipeline, PipelineConfig, DEFAULT_GAP_FACTOR, DEFAULT_TAU,
};
use specreg::{BasisFamily, Expansion, NoisyDataset, ProjectionSplit};

pub use error::{CliError, CliResult};
use io::{write_columns, write_json, Table};

/// Overrides `--seed` when set.
pub const SEED_ENV: &str = "SPECREG_SEED";

pub const EXIT_DIAGNOSTIC: u8 = 3;

#[derive(Debug, Parser)]
#[command(name = "specreg", version, about = "Regularize noisy samples by truncated spectral projection")]
pub struct Cli {
    /// More log output (-v info, -vv debug). RUST_LOG takes precedence.
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    pub verbose: u8,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sample a test problem with seeded Gaussian noise and write `x,g,s` CSV.
    Generate(GenerateArgs),
    /// Separate signal from noise and estimate the source function.
    Regularize(RegularizeArgs),
    /// Run the residual diagnostics on one CSV column.
    Diagnose(DiagnoseArgs),
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[arg(long, default_value = "craig-brown", value_parser = clap::builder::PossibleValuesParser::new(PROBLEM_NAMES))]
    pub problem: String,
    #[arg(long, default_value_t = DEFAULT_M)]
    pub m: usize,
    /// Noise standard deviation, also written as the `s` column.
    #[arg(long, default_value_t = DEFAULT_SIGMA)]
    pub sigma: f64,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Write exact samples; `s` still carries `--sigma`.
    #[arg(long)]
    pub noiseless: bool,
    /// Output CSV, `-` for standard output.
    #[arg(short, long, default_value = "-")]
    pub output: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Trig,
    Fractional,
    Legendre,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    /// QR of the closed-form basis sampled on the grid.
    Projection,
    /// SVD of the discretized integration operator.
    DiscreteSvd,
}

#[derive(Debug, Args)]
pub struct RegularizeArgs {
    /// CSV with columns `x,g,s`.
    #[arg(short, long)]
    pub input: PathBuf,
    /// Result JSON, `-` for standard output.
    #[arg(short, long, default_value = "-")]
    pub output: PathBuf,
    /// Optional CSV of the fitted curves on an evaluation grid.
    #[arg(long)]
    pub curves: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Method::Projection)]
    pub method: Method,
    #[arg(long, value_enum, default_value_t = FamilyArg::Trig)]
    pub family: FamilyArg,
    /// Fractional order, required with `--family fractional`.
    #[arg(long)]
    pub mu: Option<f64>,
    /// Number of basis functions.
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub column_cap: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_TAU)]
    pub tau: f64,
    #[arg(long, default_value_t = DEFAULT_GAP_FACTOR)]
    pub gap_factor: f64,
    /// Indices to move to the noise, comma separated or repeated.
    #[arg(long, value_delimiter = ',')]
    pub demote: Vec<usize>,
    #[arg(long)]
    pub pad_to: Option<usize>,
    #[arg(long, default_value_t = 501)]
    pub eval_points: usize,
}

#[derive(Debug, Args)]
pub struct DiagnoseArgs {
    /// CSV containing the residual column.
    #[arg(short, long)]
    pub input: PathBuf,
    /// Column to test; defaults to the first one.
    #[arg(long)]
    pub column: Option<String>,
    #[arg(long)]
    pub pad_to: Option<usize>,
    /// Report JSON, `-` for standard output.
    #[arg(short, long, default_value = "-")]
    pub output: PathBuf,
    /// Optional CSV of `nu,periodogram`.
    #[arg(long)]
    pub periodogram: Option<PathBuf>,
    /// Optional CSV of `nu,cumulative,lower,upper`.
    #[arg(long)]
    pub cumulative: Option<PathBuf>,
}

/// Parses arguments, runs the command and maps the outcome to an exit code.
pub fn main_with_args<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    init_logging(cli.verbose);
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn init_logging(verbose: u8) {
    let level = match verbose {
        0 => "warn",
        1 => "info",
        _ => "debug",
    };
    let _ = env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level))
        .format_timestamp(None)
        .try_init();
}

/// Runs one command and returns its exit code.
pub fn run(command: Command) -> CliResult<u8> {
    match command {
        Command::Generate(a) => generate(&a),
        Command::Regularize(a) => regularize(&a),
        Command::Diagnose(a) => diagnose(&a),
    }
}

fn effective_seed(flag: u64) -> CliResult<u64> {
    match std::env::var(SEED_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("{SEED_ENV}='{v}' is not an unsigned integer"))),
        Err(_) => Ok(flag),
    }
}

fn generate(args: &GenerateArgs) -> CliResult<u8> {
    let problem = by_name(&args.problem)?;
    if args.m == 0 {
        return Err(CliError::Usage("--m must be positive".into()));
    }
    let noise = NoiseSpec::new(args.sigma, effective_seed(args.seed)?)?;
    let data = problem.dataset(args.m, noise, args.noiseless)?;
    log::info!("generated {} with m = {}, seed = {}", problem, args.m, noise.seed);
    write_columns(&args.output, &["x", "g", "s"], &[data.xs(), data.g(), data.s()])?;
    Ok(0)
}

fn read_dataset(path: &Path) -> CliResult<NoisyDataset> {
    let table = Table::read(path)?;
    let (x, g, s) = (table.column("x")?, table.column("g")?, table.column("s")?);
    NoisyDataset::new(x.to_vec(), g.to_vec(), s.to_vec()).map_err(|e| CliError::Input {
        path: path.to_owned(),
        message: e.to_string(),
    })
}

fn family_of(args: &RegularizeArgs) -> CliResult<BasisFamily> {
    match (args.family, args.mu) {
        (FamilyArg::Trig, None) => Ok(BasisFamily::TrigIntegration),
        (FamilyArg::Legendre, None) => Ok(BasisFamily::LegendreGeneric),
        (FamilyArg::Fractional, Some(mu)) => Ok(BasisFamily::fractional(mu)?),
        (FamilyArg::Fractional, None) => Err(CliError::Usage("--family fractional needs --mu".into())),
        (_, Some(_)) => Err(CliError::Usage("--mu only applies to --family fractional".into())),
    }
}

#[derive(Serialize)]
struct Expansions<'a> {
    data: &'a Expansion,
    source: &'a Expansion,
}

#[derive(Serialize)]
struct DataEcho<'a> {
    x: &'a [f64],
    g: &'a [f64],
    s: &'a [f64],
    g_s: &'a [f64],
    g_n: &'a [f64],
}

#[derive(Serialize)]
struct MidpointEstimate<'a> {
    h: f64,
    midpoints: &'a [f64],
    f_hat: &'a [f64],
}

#[derive(Serialize)]
struct RegularizeReport<'a> {
    method: &'static str,
    #[serde(flatten)]
    family: Option<BasisFamily>,
    n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    condition_estimate: Option<f64>,
    split: &'a ProjectionSplit,
    #[serde(skip_serializing_if = "Option::is_none")]
    expansions: Option<Expansions<'a>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    discrete: Option<MidpointEstimate<'a>>,
    diagnostics: &'a DiagnosticsReport,
    data: DataEcho<'a>,
}

fn regularize(args: &RegularizeArgs) -> CliResult<u8> {
    let data = read_dataset(&args.input)?;
    let cfg = PipelineConfig {
        n: args.n,
        column_cap: args.column_cap,
        tau: args.tau,
        gap_factor: args.gap_factor,
        demote: args.demote.clone(),
        pad_to: args.pad_to,
    };
    let report_ok = match args.method {
        Method::Projection => {
            let family = family_of(args)?;
            let out = run_pipeline(&data, family, &cfg)?;
            write_json(
                &args.output,
                &RegularizeReport {
                    method: "projection",
                    family: Some(family),
                    n: out.n,
                    condition_estimate: Some(out.condition_estimate),
                    split: &out.split,
                    expansions: Some(Expansions {
                        data: &out.data,
                        source: &out.source,
                    }),
                    discrete: None,
                    diagnostics: &out.report,
                    data: DataEcho {
                        x: data.xs(),
                        g: data.g(),
                        s: data.s(),
                        g_s: &out.g_s,
                        g_n: &out.g_n,
                    },
                },
            )?;
            if let Some(path) = &args.curves {
                if args.eval_points < 2 {
                    return Err(CliError::Usage("--eval-points must be at least 2".into()));
                }
                let (a, b) = family.domain();
                let xs: Vec<f64> = (0..args.eval_points)
                    .map(|k| a + (b - a) * k as f64 / (args.eval_points - 1) as f64)
                    .collect();
                let g_curve = out.data.eval_many(&xs);
                let f_curve = out.source.eval_many(&xs);
                write_columns(path, &["x", "g_fit", "f_hat"], &[&xs, &g_curve, &f_curve])?;
            }
            out.report.pass_d1
        }
        Method::DiscreteSvd => {
            let out = discrete_svd_pipeline(&data, &cfg)?;
            write_json(
                &args.output,
                &RegularizeReport {
                    method: "discrete-svd",
                    family: None,
                    n: data.len(),
                    condition_estimate: None,
                    split: &out.split,
                    expansions: None,
                    discrete: Some(MidpointEstimate {
                        h: out.h,
                        midpoints: &out.midpoints,
                        f_hat: &out.f_hat,
                    }),
                    diagnostics: &out.report,
                    data: DataEcho {
                        x: data.xs(),
                        g: data.g(),
                        s: data.s(),
                        g_s: &out.g_s,
                        g_n: &out.g_n,
                    },
                },
            )?;
            if let Some(path) = &args.curves {
                write_columns(path, &["x", "f_hat"], &[&out.midpoints, &out.f_hat])?;
            }
            out.report.pass_d1
        }
    };
    if report_ok {
        Ok(0)
    } else {
        log::warn!("residual sum of squares outside the discrepancy bounds");
        Ok(EXIT_DIAGNOSTIC)
    }
}

fn diagnose(args: &DiagnoseArgs) -> CliResult<u8> {
    let table = Table::read(&args.input)?;
    let values = match &args.column {
        Some(name) => table.column(name)?,
        None => &table.columns[0],
    };
    let m = values.len();
    let pad = args.pad_to.unwrap_or_else(|| specreg::diagnostics::default_pad(m));
    let series = ResidualSeries::new(values.to_vec())?;
    let report = whiteness_report(&series, pad)?;
    write_json(&args.output, &report)?;
    if let Some(path) = &args.periodogram {
        write_columns(path, &["nu", "periodogram"], &[&report.frequencies, &report.periodogram])?;
    }
    if let Some(path) = &args.cumulative {
        let lower: Vec<f64> = report.frequencies.iter().map(|nu| 2.0 * nu - report.band_delta).collect();
        let upper: Vec<f64> = report.frequencies.iter().map(|nu| 2.0 * nu + report.band_delta).collect();
        write_columns(
            path,
            &["nu", "cumulative", "lower", "upper"],
            &[&report.frequencies, &report.cumulative, &lower, &upper],
        )?;
    }
    Ok(if report.all_pass() { 0 } else { EXIT_DIAGNOSTIC })
}
