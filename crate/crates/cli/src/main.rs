mod commands;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use quadorth::cases::{CaseId, CaseParams, Family};
use quadorth::Rational;

use commands::CliError;

/// Exact quadratic decomposition and d-orthogonality analysis of monic
/// polynomial sequences.
#[derive(Parser, Debug)]
#[command(name = "quadorth", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decompose a sequence and check the reconstruction.
    Decompose(DecomposeArgs),
    /// Detect the orthogonality order, symmetry and Hahn-classical character.
    Analyze(AnalyzeArgs),
    /// Verify a case against its closed-form tables at sampled or given parameters.
    VerifyCase(VerifyArgs),
    /// Run case verification over many tuples concurrently and aggregate.
    Sweep(SweepArgs),
    /// Derivative sequence, its coefficients and its orthogonality order.
    Derive(AnalyzeArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Main,
    #[value(alias = "co")]
    CoRecursive,
    #[value(name = "pert2-i")]
    Pert2I,
    #[value(name = "pert2-ii")]
    Pert2II,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::Main => Family::Main,
            FamilyArg::CoRecursive => Family::CoRecursive,
            FamilyArg::Pert2I => Family::Pert2I,
            FamilyArg::Pert2II => Family::Pert2II,
        }
    }
}

fn parse_rational(s: &str) -> Result<Rational, String> {
    s.parse::<Rational>().map_err(|e| e.to_string())
}

fn parse_case(s: &str) -> Result<CaseId, String> {
    s.parse::<CaseId>().map_err(|e| e.to_string())
}

fn parse_nmax(s: &str) -> Result<usize, String> {
    let n: usize = s.parse().map_err(|e| format!("{e}"))?;
    if n < 4 {
        return Err("nmax must be at least 4".into());
    }
    Ok(n)
}

#[derive(Args, Debug, Clone, Default)]
pub struct ParamArgs {
    #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
    beta: Option<Rational>,
    #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
    alpha1: Option<Rational>,
    #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
    alpha2: Option<Rational>,
    #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
    gamma: Option<Rational>,
    #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
    p: Option<Rational>,
    #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
    q: Option<Rational>,
    #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
    a: Option<Rational>,
    #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
    tau: Option<Rational>,
    #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
    tau1: Option<Rational>,
    #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
    tau2: Option<Rational>,
    #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
    eta1: Option<Rational>,
    #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
    eta2: Option<Rational>,
    #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
    xi: Option<Rational>,
}

impl ParamArgs {
    fn any_base(&self) -> bool {
        [&self.beta, &self.alpha1, &self.alpha2, &self.gamma]
            .iter()
            .any(|v| v.is_some())
    }

    /// Full parameter tuple; every base-family value must be given.
    fn build(&self) -> Result<CaseParams, CliError> {
        let need =
            |v: &Option<Rational>, name: &str| v.clone().ok_or_else(|| CliError::Parse(format!("missing --{name}")));
        let mut params = CaseParams::main(
            need(&self.beta, "beta")?,
            need(&self.alpha1, "alpha1")?,
            need(&self.alpha2, "alpha2")?,
            need(&self.gamma, "gamma")?,
            need(&self.p, "p")?,
            need(&self.q, "q")?,
            need(&self.a, "a")?,
        );
        params.tau = self.tau.clone();
        params.tau1 = self.tau1.clone();
        params.tau2 = self.tau2.clone();
        params.eta1 = self.eta1.clone();
        params.eta2 = self.eta2.clone();
        params.xi = self.xi.clone();
        Ok(params)
    }
}

#[derive(Args, Debug, Clone)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the report here instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct SourceArgs {
    /// Family to build from the parameters; inferred from the optional
    /// parameters when omitted.
    #[arg(long, value_enum, conflicts_with = "sc_file")]
    family: Option<FamilyArg>,
    /// Structure-coefficient table in JSON.
    #[arg(long)]
    sc_file: Option<PathBuf>,
    #[command(flatten)]
    params: ParamArgs,
}

#[derive(Args, Debug)]
pub struct DecomposeArgs {
    #[command(flatten)]
    source: SourceArgs,
    /// Highest component index; defaults to 12, or to what an SC file covers.
    #[arg(long, value_parser = parse_nmax)]
    nmax: Option<usize>,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args, Debug)]
pub struct AnalyzeArgs {
    #[command(flatten)]
    source: SourceArgs,
    #[arg(long, value_parser = parse_nmax, default_value_t = 12)]
    nmax: usize,
    /// Largest order tested; defaults to nmax.
    #[arg(long)]
    dmax: Option<usize>,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long, value_parser = parse_case)]
    case: CaseId,
    /// Verify exactly this tuple instead of sampling.
    #[command(flatten)]
    params: ParamArgs,
    #[arg(long, default_value_t = 20, value_parser = clap::value_parser!(u64).range(1..))]
    samples: u64,
    #[arg(long, env = "QUADORTH_SEED", default_value_t = 0)]
    seed: u64,
    #[arg(long, value_parser = parse_nmax, default_value_t = 12)]
    nmax: usize,
    #[arg(long)]
    dmax: Option<usize>,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args, Debug)]
pub struct SweepArgs {
    #[arg(long, value_parser = parse_case)]
    case: CaseId,
    /// JSON array of parameter objects; replaces sampling.
    #[arg(long)]
    grid: Option<PathBuf>,
    #[arg(long, default_value_t = 20, value_parser = clap::value_parser!(u64).range(1..))]
    samples: u64,
    #[arg(long, env = "QUADORTH_SEED", default_value_t = 0)]
    seed: u64,
    #[arg(long, value_parser = parse_nmax, default_value_t = 12)]
    nmax: usize,
    #[arg(long)]
    dmax: Option<usize>,
    /// Treat tuples where a generic non-orthogonality claim fails as the
    /// result of the search instead of as failures.
    #[arg(long)]
    hunt: bool,
    /// Include every verdict in the report.
    #[arg(long)]
    verdicts: bool,
    #[command(flatten)]
    out: OutputArgs,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Decompose(args) => commands::decompose(&args),
        Command::Analyze(args) => commands::analyze(&args),
        Command::VerifyCase(args) => commands::verify_case(&args),
        Command::Sweep(args) => commands::sweep(&args),
        Command::Derive(args) => commands::derive(&args),
    };
    match result {
        Ok(ok) => ExitCode::from(if ok { 0 } else { 1 }),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
