use std::fs::File;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use seqaccel::problems::ProblemKind;
use seqaccel_bench::config::{guard_from_env, BandPolicy, ConfigFile, Format, RunConfig};
use seqaccel_bench::export::{read_csv, render, write_atomic};
use seqaccel_bench::fixture::{bundled_fixture, check_fixture, load_fixture, run_fixture, CheckSummary};
use seqaccel_bench::registry::{PARTIAL_SUMS, TRANSFORM_NAMES};
use seqaccel_bench::{report, BenchError};

#[derive(Parser)]
#[command(name = "seqaccel", version, about = "Run and check sequence-acceleration benchmarks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a problem x transform matrix and print the error table.
    Run(Flags),
    /// Compare errors against a fixture of expected magnitudes.
    Check(Flags),
    /// List registered problems and transforms.
    List,
}

#[derive(Args, Default)]
struct Flags {
    /// TOML file whose keys mirror these flags.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Problem name, optionally with parameters (`euler-divergent:z=3`).
    #[arg(long = "problem")]
    problems: Vec<String>,
    /// Transform name, optionally with parameters (`osada:theta=1/2`).
    #[arg(long = "transform")]
    transforms: Vec<String>,
    #[arg(long)]
    n_min: Option<usize>,
    #[arg(long)]
    n_max: Option<usize>,
    /// Default Levin beta.
    #[arg(long)]
    beta: Option<String>,
    /// Default Osada theta.
    #[arg(long)]
    theta: Option<String>,
    /// Default argument for parametrised problems.
    #[arg(long)]
    z: Option<String>,
    #[arg(long)]
    format: Option<String>,
    /// Write output here (atomically) instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Fixture CSV; the bundled tables are used when omitted.
    #[arg(long)]
    fixture: Option<PathBuf>,
    /// Check this CSV report instead of recomputing.
    #[arg(long)]
    report: Option<PathBuf>,
    /// Decade band half-width.
    #[arg(long)]
    band: Option<f64>,
}

fn number(flag: &str, v: &Option<String>) -> Result<Option<f64>, BenchError> {
    v.as_deref()
        .map(|s| {
            seqaccel_bench::registry::parse_number(s)
                .map_err(|_| BenchError::Config(format!("--{flag} expects a number, got {s:?}")))
        })
        .transpose()
}

fn settings(flags: &Flags) -> Result<ConfigFile, BenchError> {
    let base = match &flags.config {
        Some(p) => ConfigFile::load(p)?,
        None => ConfigFile::default(),
    };
    let over = ConfigFile {
        problems: (!flags.problems.is_empty()).then(|| flags.problems.clone()),
        transforms: (!flags.transforms.is_empty()).then(|| flags.transforms.clone()),
        n_min: flags.n_min,
        n_max: flags.n_max,
        beta: number("beta", &flags.beta)?,
        theta: number("theta", &flags.theta)?,
        z: number("z", &flags.z)?,
        format: flags.format.as_deref().map(str::parse::<Format>).transpose()?,
        out: flags.out.clone(),
        fixture: flags.fixture.clone(),
        band: flags.band,
    };
    Ok(base.merged(over))
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), BenchError> {
    match out {
        Some(p) => write_atomic(p, text.as_bytes()),
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn cmd_run(flags: &Flags) -> Result<ExitCode, BenchError> {
    let file = settings(flags)?;
    let out = file.out.clone();
    let mut config = RunConfig::from_file(file)?;
    config.guard = guard_from_env()?;
    let report = report::run(&config)?;
    emit(&render(&report, config.format, &config.band)?, out.as_deref())?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_check(flags: &Flags) -> Result<ExitCode, BenchError> {
    let file = settings(flags)?;
    let out = file.out.clone();
    let fixture = match &file.fixture {
        Some(p) => load_fixture(File::open(p)?)?,
        None => bundled_fixture(),
    };
    if fixture.is_empty() {
        return Err(BenchError::Config("fixture has no rows".into()));
    }
    let band = match file.band {
        Some(b) => BandPolicy::with_band(b)?,
        None => BandPolicy::default(),
    };
    let mut template = RunConfig::new(vec![String::new()], vec![PARTIAL_SUMS.into()], 0, 0);
    template.band = band;
    template.guard = guard_from_env()?;
    let report = match &flags.report {
        Some(p) => read_csv(File::open(p)?)?,
        None => run_fixture(&fixture, &template)?,
    };
    let summary = check_fixture(&report, &fixture, &band, &template)?;
    let mut text = String::new();
    for row in summary.failures() {
        text.push_str(&format!("FAIL {}\n", CheckSummary::describe(row)));
    }
    text.push_str(&format!(
        "{} rows: {} passed, {} failed, {} skipped ({})\n",
        summary.rows.len(),
        summary.passed,
        summary.failed,
        summary.skipped,
        band.describe()
    ));
    emit(&text, out.as_deref())?;
    Ok(if summary.all_passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn cmd_list() -> ExitCode {
    println!("problems:");
    for p in ProblemKind::NAMES {
        println!("  {p}");
    }
    println!("transforms:");
    println!("  {PARTIAL_SUMS}");
    for t in TRANSFORM_NAMES.iter().filter(|t| **t != PARTIAL_SUMS) {
        println!("  {t}");
    }
    ExitCode::SUCCESS
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Run(f) => cmd_run(f),
        Command::Check(f) => cmd_check(f),
        Command::List => Ok(cmd_list()),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
