//! `matroid-approx`: generate, check and analyse small independence systems.

mod cmd;
mod io;
mod report;
mod verify;

use std::fmt;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Exit codes.
pub const EXIT_VALIDATION: u8 = 2;
pub const EXIT_CAPABILITY: u8 = 3;
pub const EXIT_VERIFY: u8 = 4;
pub const EXIT_USAGE: u8 = 64;

pub enum Failure {
    Validation(String),
    Capability(String),
    /// A verification suite found a counterexample; carries the report.
    Verify(Box<report::Report>),
}

impl Failure {
    pub fn validation(msg: impl Into<String>) -> Failure {
        Failure::Validation(msg.into())
    }

    pub fn context(self, path: &Path) -> Failure {
        match self {
            Failure::Validation(m) => Failure::Validation(format!("{}: {m}", path.display())),
            other => other,
        }
    }

    fn code(&self) -> u8 {
        match self {
            Failure::Validation(_) => EXIT_VALIDATION,
            Failure::Capability(_) => EXIT_CAPABILITY,
            Failure::Verify(_) => EXIT_VERIFY,
        }
    }
}

impl From<matroid_approx::Error> for Failure {
    fn from(e: matroid_approx::Error) -> Failure {
        if e.is_capability() {
            Failure::Capability(e.to_string())
        } else {
            Failure::Validation(e.to_string())
        }
    }
}

impl fmt::Debug for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Validation(m) => write!(f, "validation error: {m}"),
            Failure::Capability(m) => write!(f, "capability error: {m}"),
            Failure::Verify(_) => write!(f, "verification failed"),
        }
    }
}

#[derive(Parser)]
#[command(name = "matroid-approx", version, about = "Independence systems, greedy, rank quotients and inner matroids")]
pub struct Cli {
    /// Add decimal approximations next to every exact rational.
    #[arg(long, global = true)]
    pub float: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Generate an instance.
    Gen(GenArgs),
    /// Validate a system and report its basic structure.
    Check(CheckArgs),
    /// Run the greedy algorithm.
    Greedy(GreedyArgs),
    /// Rank quotient with a witness.
    Q(QArgs),
    /// Approximation quality of a given inner matroid.
    Rho(RhoArgs),
    /// Best inner matroid.
    RhoMax(RhoMaxArgs),
    /// Export the rank-reduction integer program.
    ExportIp(ExportIpArgs),
    /// Run the property suites.
    Verify(VerifyArgs),
    /// Compare greedy with an inner matroid on random weights.
    Compare(CompareArgs),
}

#[derive(Args)]
pub struct GenArgs {
    #[command(subcommand)]
    pub kind: GenKind,
}

#[derive(Subcommand)]
pub enum GenKind {
    /// Two uniform peaks U^{k1} on E1 and U^{k2} on E2 = E \ E1.
    TwinPeaks {
        #[arg(long)]
        e1: usize,
        #[arg(long)]
        k1: usize,
        #[arg(long)]
        e2: usize,
        #[arg(long)]
        k2: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Stable sets of the path on n vertices.
    Path {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Random hereditary system.
    Random {
        #[arg(long)]
        n: usize,
        /// A rational in [0, 1], e.g. 1/2.
        #[arg(long, default_value = "1/2")]
        density: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        allow_loops: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Uniform matroid U^k_n.
    Uniform {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// A named worked example.
    Fixture {
        #[arg(long)]
        name: String,
        #[arg(long)]
        with_acceptable: bool,
        #[arg(long)]
        with_inner: bool,
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
    },
}

#[derive(Args)]
pub struct CheckArgs {
    #[arg(long)]
    pub system: PathBuf,
    /// Fail with a validation error unless the system is a matroid.
    #[arg(long)]
    pub require_matroid: bool,
    /// Also validate an acceptable set against the system.
    #[arg(long)]
    pub acceptable: Option<PathBuf>,
}

#[derive(Args)]
pub struct GreedyArgs {
    #[arg(long)]
    pub system: PathBuf,
    #[arg(long)]
    pub weights: PathBuf,
    /// Tie-break permutation file; identity when omitted.
    #[arg(long)]
    pub tiebreak: Option<PathBuf>,
}

#[derive(Args)]
pub struct QArgs {
    #[arg(long)]
    pub system: PathBuf,
    /// Also report tight weights and the circuit bound.
    #[arg(long)]
    pub tight: bool,
}

#[derive(Args)]
pub struct RhoArgs {
    #[arg(long)]
    pub system: PathBuf,
    #[arg(long)]
    pub acceptable: PathBuf,
    #[arg(long)]
    pub inner: PathBuf,
    /// Use the downward closure of the acceptable set.
    #[arg(long)]
    pub dagger: bool,
}

/// Acceptable set selection shared by several commands.
#[derive(Args)]
pub struct AcceptableArgs {
    /// Acceptable set file; all independent sets when omitted.
    #[arg(long, conflicts_with = "bases")]
    pub acceptable: Option<PathBuf>,
    /// Use the bases of the system as the acceptable set.
    #[arg(long)]
    pub bases: bool,
}

#[derive(Args)]
pub struct RhoMaxArgs {
    #[arg(long)]
    pub system: PathBuf,
    #[command(flatten)]
    pub acceptable: AcceptableArgs,
    /// Local search instead of exact enumeration.
    #[arg(long)]
    pub heuristic: bool,
    #[arg(long, default_value_t = matroid_approx::approx::DEFAULT_BUDGET)]
    pub budget: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Write the chosen inner matroid to this file.
    #[arg(long)]
    pub inner_out: Option<PathBuf>,
}

#[derive(Args)]
pub struct ExportIpArgs {
    #[arg(long)]
    pub system: PathBuf,
    #[command(flatten)]
    pub acceptable: AcceptableArgs,
    /// Write the model here and print a summary instead of the model.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Solve by enumeration (small ground sets only) and report the optimum.
    #[arg(long)]
    pub solve: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    All,
    Greedy,
    Quotient,
    Matroid,
    Index,
    Perfect,
    Milgrom,
    Ip,
}

#[derive(Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value = "all")]
    pub suite: Suite,
    #[arg(long, default_value_t = 4)]
    pub n_max: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Random weight vectors per instance.
    #[arg(long, default_value_t = 100)]
    pub trials: usize,
    /// Random systems per size above the exhaustive range.
    #[arg(long, default_value_t = 50)]
    pub samples: usize,
    /// Run only instances i with i mod m = k, written k/m.
    #[arg(long, value_parser = verify::parse_shard)]
    pub shard: Option<verify::Shard>,
}

#[derive(Args)]
pub struct CompareArgs {
    #[arg(long)]
    pub system: PathBuf,
    #[command(flatten)]
    pub acceptable: AcceptableArgs,
    /// Inner matroid; the best one found is used when omitted.
    #[arg(long)]
    pub inner: Option<PathBuf>,
    #[arg(long, default_value_t = 200)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = matroid_approx::approx::DEFAULT_BUDGET)]
    pub budget: usize,
}

/// What a command writes to standard output.
pub enum Output {
    /// A report; command echo, digest and timing are appended.
    Report(report::Report, String),
    /// Raw text such as a generated instance or a model export.
    Text(String),
}

fn configure_threads() -> Result<(), Failure> {
    if let Ok(v) = std::env::var("MATROID_APPROX_THREADS") {
        let n: usize = v
            .parse()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| Failure::validation(format!("MATROID_APPROX_THREADS={v:?} is not a positive integer")))?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Failure::validation(e.to_string()))?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<Output, Failure> {
    configure_threads()?;
    let float = cli.float;
    match cli.command {
        Command::Gen(a) => cmd::gen(a, float),
        Command::Check(a) => cmd::check(a, float),
        Command::Greedy(a) => cmd::greedy(a, float),
        Command::Q(a) => cmd::q(a, float),
        Command::Rho(a) => cmd::rho(a, float),
        Command::RhoMax(a) => cmd::rho_max(a, float),
        Command::ExportIp(a) => cmd::export_ip(a, float),
        Command::Verify(a) => verify::run(a, float),
        Command::Compare(a) => cmd::compare(a, float),
    }
}

fn main() -> ExitCode {
    let started = Instant::now();
    let argv: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    let echo = &argv[1..];
    match run(cli) {
        Ok(Output::Report(r, digest)) => {
            print!("{}", r.finish(echo, digest, started));
            ExitCode::SUCCESS
        }
        Ok(Output::Text(t)) => {
            print!("{t}");
            ExitCode::SUCCESS
        }
        Err(Failure::Verify(r)) => {
            print!("{}", r.finish(echo, io::Inputs::new().digest(), started));
            eprintln!("verification failed");
            ExitCode::from(EXIT_VERIFY)
        }
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.code())
        }
    }
}
