//! Command-line front end: seeded, reproducible checks with machine-readable
//! reports on stdout and progress on stderr.
//!
//! Exit codes: 0 pass, 1 property violation, 2 usage error, 3 inconclusive.

mod commands;
mod report;

use clap::{Args, Parser, Subcommand};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INCONCLUSIVE: i32 = 3;

#[derive(Parser)]
#[command(
    name = "altlab",
    version,
    about = "Exact-arithmetic checks for alternating polynomial spaces and almost-commuting tuples"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Tabulate bigraded dimensions of the k-fold alternant product space.
    Hilbert(HilbertArgs),
    /// Certify freeness over symmetric polynomials in y up to the cutoff.
    Freeness(FreenessArgs),
    /// Restriction-map checks: wedge identity, surjectivity, injectivity
    /// evidence, and the invariant-ring comparison.
    PropAk(PropAkArgs),
    /// Stratum sampling with Krylov, Jacobian, vanishing and equivariance
    /// verification.
    Variety(VarietyArgs),
}

#[derive(Args, Clone)]
pub struct CommonArgs {
    /// Number of variable pairs (matrix size).
    #[arg(long)]
    pub n: usize,
    /// Product power k.
    #[arg(long, default_value_t = 1)]
    pub k: u32,
    #[arg(long = "cutoff-x", default_value_t = 3)]
    pub cutoff_x: u32,
    #[arg(long = "cutoff-y", default_value_t = 3)]
    pub cutoff_y: u32,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Sampled points per check (strata samples, translated points).
    #[arg(long, default_value_t = 20)]
    pub samples: usize,
    /// Coefficient mode: exact | prime | prime:<p>. Prime-field runs are
    /// exploratory; verdict-bearing commands require exact mode.
    #[arg(long, default_value = "exact")]
    pub mode: String,
    /// Report format: json | csv (csv only where a table is the payload).
    #[arg(long, default_value = "json")]
    pub output: String,
    /// Override the cost guard.
    #[arg(long)]
    pub force: bool,
}

#[derive(Args)]
pub struct HilbertArgs {
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Args)]
pub struct FreenessArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Negative-control fixture: glue a torsion vector at bidegree "a,b"
    /// and expect the checks to fail.
    #[arg(long = "plant-torsion", value_name = "A,B")]
    pub plant_torsion: Option<String>,
}

#[derive(Args)]
pub struct PropAkArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Random word tuples for the wedge identity.
    #[arg(long, default_value_t = 100)]
    pub tuples: usize,
    /// Random evaluation points per tuple.
    #[arg(long, default_value_t = 4)]
    pub trials: usize,
}

#[derive(Args)]
pub struct VarietyArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Random word tuples per sampled point.
    #[arg(long, default_value_t = 50)]
    pub tuples: usize,
    /// Random translations per sampled point for the equivariance check.
    #[arg(long, default_value_t = 20)]
    pub translates: usize,
    /// Restrict to a single stratum.
    #[arg(long)]
    pub stratum: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Exact,
    Prime(u64),
}

pub struct UsageError(pub String);

impl From<altlab_core::LabError> for UsageError {
    fn from(e: altlab_core::LabError) -> Self {
        UsageError(e.to_string())
    }
}

pub fn parse_mode(s: &str) -> Result<Mode, UsageError> {
    match s {
        "exact" => Ok(Mode::Exact),
        "prime" => Ok(Mode::Prime(altlab_core::scalar::DEFAULT_PRIME)),
        other => match other.strip_prefix("prime:") {
            Some(p) => p
                .parse::<u64>()
                .map(Mode::Prime)
                .map_err(|e| UsageError(format!("bad prime in --mode: {e}"))),
            None => Err(UsageError(format!("unknown mode {other:?}"))),
        },
    }
}

/// Shared validation: bounds, cost guard, mode and output constraints.
pub fn validate(
    common: &CommonArgs,
    verdict_bearing: bool,
    csv_allowed: bool,
) -> Result<Mode, UsageError> {
    if common.n == 0 {
        return Err(UsageError("--n must be at least 1".into()));
    }
    if !common.force {
        if common.n > 4 {
            return Err(UsageError(
                "cost guard: n > 4 needs --force (exact arithmetic grows factorially)".into(),
            ));
        }
        if common.k >= 2 && common.n > 3 {
            return Err(UsageError(
                "cost guard: k >= 2 restricted to n <= 3 without --force".into(),
            ));
        }
        let cells = (common.cutoff_x as u64 + 1) * (common.cutoff_y as u64 + 1);
        if cells > 100 {
            return Err(UsageError(format!(
                "cost guard: cutoff window has {cells} cells (limit 100); pass --force to override"
            )));
        }
    }
    let mode = parse_mode(&common.mode)?;
    if verdict_bearing && mode != Mode::Exact {
        return Err(UsageError(
            "prime-field mode is exploratory only; verdict-bearing commands require --mode exact"
                .into(),
        ));
    }
    match common.output.as_str() {
        "json" => {}
        "csv" if csv_allowed => {}
        "csv" => {
            return Err(UsageError(
                "this command has no CSV table; use --output json".into(),
            ))
        }
        other => return Err(UsageError(format!("unknown output format {other:?}"))),
    }
    Ok(mode)
}

fn workers_from_env() -> Result<usize, UsageError> {
    match std::env::var("ALTLAB_WORKERS") {
        Ok(v) => v
            .parse::<usize>()
            .ok()
            .filter(|&w| w >= 1)
            .ok_or_else(|| {
                UsageError(format!("ALTLAB_WORKERS must be a positive integer, got {v:?}"))
            }),
        Err(_) => Ok(std::thread::available_parallelism().map(|p| p.get()).unwrap_or(1)),
    }
}

fn main() {
    let cli = Cli::parse();
    let code = match run(cli) {
        Ok(code) => code,
        Err(UsageError(msg)) => {
            eprintln!("usage error: {msg}");
            EXIT_USAGE
        }
    };
    std::process::exit(code);
}

fn run(cli: Cli) -> Result<i32, UsageError> {
    let workers = workers_from_env()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| UsageError(format!("cannot build worker pool: {e}")))?;
    pool.install(|| match cli.cmd {
        Cmd::Hilbert(args) => commands::hilbert::run(&args, workers),
        Cmd::Freeness(args) => commands::freeness::run(&args, workers),
        Cmd::PropAk(args) => commands::prop_ak::run(&args, workers),
        Cmd::Variety(args) => commands::variety::run(&args, workers),
    })
}
