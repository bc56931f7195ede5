//! `pisano`: profiles, OEIS generators, verification suites, order censuses
//! and Wall-Sun-Sun searches.

mod render;

use std::error::Error as StdError;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use pisano_core::classify::{self, OeisId};
use pisano_core::lab::{self, FiniteOrdersBounds, FiniteOrdersCase};
use pisano_core::pisano::{self, wall_sun_sun_primes};
use pisano_core::{Error, RecurrenceParams, SweepReport};

use render::Output;

#[derive(Parser)]
#[command(
    name = "pisano",
    version,
    about = "Periods and zero counts of linear recurrences modulo m"
)]
struct Cli {
    /// Worker threads for sweeps (default: available parallelism).
    #[arg(long, global = true, env = "PISANO_JOBS")]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Period, rank, order, residue and preperiod of one sequence modulo m.
    Profile(ProfileArgs),
    /// Terms of A053029, A053030 or A053031 up to a bound.
    Oeis(OeisArgs),
    /// Run a verification suite.
    Verify(VerifyArgs),
    /// Distinct orders of an (a, b) sequence over 2 <= m <= max.
    Census(CensusArgs),
    /// K-Wall-Sun-Sun primes up to a bound.
    Wss(WssArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Plain,
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OeisFormat {
    Bfile,
    Plain,
    Json,
    Csv,
}

#[derive(Args)]
struct ProfileArgs {
    /// K for the sequence (K, 1).
    #[arg(long, allow_negative_numbers = true, conflicts_with_all = ["a", "b"], required_unless_present_all = ["a", "b"])]
    k: Option<i64>,
    #[arg(long, allow_negative_numbers = true, requires = "b")]
    a: Option<i64>,
    #[arg(long, allow_negative_numbers = true, requires = "a")]
    b: Option<i64>,
    #[arg(long = "mod")]
    modulus: u64,
    #[arg(long, value_enum, default_value_t = Format::Plain)]
    format: Format,
}

#[derive(Args)]
struct OeisArgs {
    #[arg(long)]
    id: String,
    #[arg(long)]
    max: u64,
    #[arg(long, value_enum, default_value_t = OeisFormat::Bfile)]
    format: OeisFormat,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    suite: String,
    /// Upper bound of the scanned range (moduli, primes, exponents or indices).
    #[arg(long)]
    max: Option<u64>,
    /// Largest K (or |a| for (a, -1) and finite-orders suites).
    #[arg(long)]
    kmax: Option<i64>,
    /// finite-orders case (i to v); all cases when absent.
    #[arg(long)]
    case: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Plain)]
    format: Format,
}

#[derive(Args)]
struct CensusArgs {
    #[arg(long, allow_negative_numbers = true)]
    a: i64,
    #[arg(long, allow_negative_numbers = true)]
    b: i64,
    #[arg(long)]
    max: u64,
    #[arg(long, value_enum, default_value_t = Format::Plain)]
    format: Format,
}

#[derive(Args)]
struct WssArgs {
    #[arg(long, allow_negative_numbers = true)]
    k: i64,
    #[arg(long)]
    pmax: u64,
    #[arg(long, value_enum, default_value_t = Format::Plain)]
    format: Format,
}

pub const SUITES: [&str; 13] = [
    "oeis-conjectures",
    "main-theorem",
    "lcm-tables",
    "identities",
    "wyler",
    "powers-of-two",
    "negativemult",
    "finite-orders",
    "even-k-exceptions",
    "williams",
    "carmichael",
    "degenerate-table",
    "fast-profile",
];

fn run_suite(args: &VerifyArgs) -> Result<SweepReport, Error> {
    let max = |default: u64| args.max.unwrap_or(default);
    let kmax = |default: i64| args.kmax.unwrap_or(default);
    match args.suite.as_str() {
        "oeis-conjectures" => classify::verify_oeis_conjectures(max(1000)),
        "main-theorem" => classify::verify_main_theorem(kmax(5), max(2000)),
        "lcm-tables" => classify::verify_lcm_tables(kmax(8), max(300)),
        "identities" => {
            let (k, m) = (kmax(8), max(2000));
            let terms = lab::verify_term_identities(k.max(1), 200, 1_000_000)?;
            let periods = lab::verify_period_identities(k, m)?;
            let general = lab::verify_ab_order_bound(5, m.min(500))?;
            Ok(terms.merge(periods).merge(general))
        }
        "wyler" => classify::verify_wyler(kmax(8), max(2000)),
        "powers-of-two" => {
            let x = max(12);
            if x > pisano::MAX_TWO_EXPONENT as u64 {
                return Err(Error::OutOfRange {
                    what: "exponent",
                    value: x,
                    max: pisano::MAX_TWO_EXPONENT as u64,
                });
            }
            lab::verify_powers_of_two(kmax(16), x as u32)
        }
        "negativemult" => lab::verify_negativemult(kmax(3), max(150)),
        "finite-orders" => {
            let bounds = FiniteOrdersBounds {
                a_max: kmax(8),
                m_max: max(500),
            };
            let cases = match &args.case {
                Some(c) => vec![c.parse::<FiniteOrdersCase>()?],
                None => FiniteOrdersCase::ALL.to_vec(),
            };
            let mut reports = cases
                .into_iter()
                .map(|c| lab::verify_finite_orders_conjecture(c, bounds))
                .collect::<Result<Vec<_>, _>>()?
                .into_iter();
            let first = reports.next().expect("at least one case");
            Ok(reports.fold(first, SweepReport::merge))
        }
        "even-k-exceptions" => lab::verify_even_k_exceptions(kmax(8), max(1000)),
        "williams" => lab::williams_check(max(1000)),
        "carmichael" => lab::carmichael_check(max(90)),
        "degenerate-table" => lab::verify_degenerate_table(max(1000)),
        "fast-profile" => lab::verify_fast_profile(kmax(8), max(3000)),
        other => Err(Error::Unknown {
            kind: "suite",
            value: format!("{other} (known: {})", SUITES.join(", ")),
        }),
    }
}

fn run(cli: Cli) -> Result<ExitCode, Box<dyn StdError>> {
    let mut out = Output::stdout();
    match cli.command {
        Command::Profile(args) => {
            let params = match (args.k, args.a, args.b) {
                (Some(k), None, None) => RecurrenceParams::k_fibonacci(k),
                (None, Some(a), Some(b)) => RecurrenceParams::new(a, b),
                _ => {
                    return Err(
                        Error::InvalidArgument("give --k or both --a and --b".into()).into(),
                    )
                }
            };
            let profile = pisano_core::profile(params, args.modulus)?;
            out.profile(args.format, params, args.modulus, &profile)?;
        }
        Command::Oeis(args) => {
            let id: OeisId = args.id.parse()?;
            let terms = classify::oeis_sequence(id, args.max)?;
            out.sequence(args.format, &terms)?;
        }
        Command::Verify(args) => {
            if args.case.is_some() && args.suite != "finite-orders" {
                return Err(
                    Error::InvalidArgument("--case only applies to finite-orders".into()).into(),
                );
            }
            eprintln!("running {}", args.suite);
            let start = Instant::now();
            let report = run_suite(&args)?;
            eprintln!(
                "{}: {} in {:.2}s",
                report.claim,
                report.status,
                start.elapsed().as_secs_f64()
            );
            out.report(args.format, &report)?;
            if !report.passed() {
                return Ok(ExitCode::from(1));
            }
        }
        Command::Census(args) => {
            eprintln!("census of ({}, {}) up to {}", args.a, args.b, args.max);
            let report = lab::order_census(args.a, args.b, args.max)?;
            eprintln!("{} distinct orders", report.census_values().len());
            out.report(args.format, &report)?;
        }
        Command::Wss(args) => {
            let primes = wall_sun_sun_primes(args.k, args.pmax)?;
            out.primes(args.format, args.k, &primes)?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            eprintln!("error: --jobs must be at least 1");
            return ExitCode::from(2);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
