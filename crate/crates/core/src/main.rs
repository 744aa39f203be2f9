use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use supercat::exact::{catalan, central_binomial, super_catalan};
use supercat::record::Suite;
use supercat::report::{emit, OutputFormat};
use supercat::scan::{run_scan, ScanConfig};
use supercat::{Error, Result};

#[derive(Parser)]
#[command(
    name = "supercat",
    version,
    about = "Super Catalan numbers and congruences on their double sums"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print an exact value.
    Compute {
        #[command(subcommand)]
        kind: ComputeKind,
    },
    /// Run the checks and print a summary; exits 1 if any check fails.
    Verify(ScanArgs),
    /// Run the checks and write a full report (JSON by default).
    Report(ScanArgs),
}

#[derive(Subcommand)]
enum ComputeKind {
    /// S(m, n) = C(2m,m) C(2n,n) / C(m+n,m)
    Supercatalan { m: u64, n: u64 },
    /// C_n = C(2n,n) / (n+1)
    Catalan { n: u64 },
    /// C(2n, n)
    Centralbinom { n: u64 },
}

#[derive(Args)]
struct ScanArgs {
    /// Inclusive prime range, `MIN..MAX`.
    #[arg(long, env = "SUPERCAT_PRIMES", default_value = "3..299")]
    primes: String,
    /// Prime bound for the split, lemmas, mt and sun_tauraso suites.
    #[arg(long, env = "SUPERCAT_LEMMA_MAX", default_value_t = 99)]
    lemma_max: u64,
    /// Comma-separated suites, `all` or `none`.
    #[arg(long, env = "SUPERCAT_SUITES", default_value = "all")]
    suites: String,
    /// Identity window `0..=K`.
    #[arg(long, env = "SUPERCAT_N_MAX", default_value_t = 60)]
    n_max: u64,
    /// json, csv or text.
    #[arg(long, env = "SUPERCAT_FORMAT")]
    format: Option<String>,
    #[arg(long, env = "SUPERCAT_OUT")]
    out: Option<PathBuf>,
    /// Worker threads (defaults to the number of CPUs).
    #[arg(long, env = "SUPERCAT_JOBS")]
    jobs: Option<usize>,
    /// Add a deliberately false congruence to exercise the failure path.
    #[arg(long, env = "SUPERCAT_SELF_TEST")]
    self_test: bool,
}

fn parse_range(s: &str) -> Result<(u64, u64)> {
    let bad = || Error::InvalidConfig(format!("expected MIN..MAX, got `{s}`"));
    let (lo, hi) = s.split_once("..").ok_or_else(bad)?;
    let hi = hi.strip_prefix('=').unwrap_or(hi);
    Ok((
        lo.trim().parse().map_err(|_| bad())?,
        hi.trim().parse().map_err(|_| bad())?,
    ))
}

fn parse_suites(s: &str) -> Result<BTreeSet<Suite>> {
    match s.trim() {
        "all" => Ok(Suite::ALL.into_iter().collect()),
        "" | "none" => Ok(BTreeSet::new()),
        list => list.split(',').map(str::parse).collect(),
    }
}

impl ScanArgs {
    fn into_config(self, default_format: OutputFormat) -> Result<ScanConfig> {
        let (prime_min, prime_max) = parse_range(&self.primes)?;
        let defaults = ScanConfig::default();
        let config = ScanConfig {
            prime_min,
            prime_max,
            lemma_prime_max: self.lemma_max,
            suites: parse_suites(&self.suites)?,
            identity_n_max: self.n_max,
            parallelism: self.jobs.unwrap_or(defaults.parallelism),
            output_format: self
                .format
                .as_deref()
                .map(str::parse)
                .transpose()?
                .unwrap_or(default_format),
            output_path: self.out,
            self_test: self.self_test,
        };
        config.validate()?;
        Ok(config)
    }
}

fn scan(args: ScanArgs, default_format: OutputFormat) -> Result<bool> {
    let config = args.into_config(default_format)?;
    let report = run_scan(&config)?;
    emit(&report, config.output_format, config.output_path.as_deref())?;
    Ok(!report.has_failures())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Compute { kind } => {
            let value = match kind {
                ComputeKind::Supercatalan { m, n } => super_catalan(m, n),
                ComputeKind::Catalan { n } => catalan(n),
                ComputeKind::Centralbinom { n } => central_binomial(n),
            };
            println!("{value}");
            Ok(true)
        }
        Command::Verify(args) => scan(args, OutputFormat::Text),
        Command::Report(args) => scan(args, OutputFormat::Json),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}
