use std::fmt;
use std::fs;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use quadorth::cases::{self, CaseId, CaseParams, CaseVerdict, Family};
use quadorth::mps::{
    derivative_sequence, extract_sc, generate_from_table, generate_mps, MpsSpec, StructureCoefficients,
};
use quadorth::ortho::{check_d_symmetric, detect_orthogonality_order, hahn_from_polys, OrthoReport};
use quadorth::quad::{check_reconstruction, decompose as qd, QdMatrix, QuadMap};
use quadorth::sampling::sample_many;
use quadorth::{Error, Poly, Rational};

use crate::render;
use crate::{AnalyzeArgs, DecomposeArgs, Format, OutputArgs, ParamArgs, SourceArgs, SweepArgs, VerifyArgs};

#[derive(Debug)]
pub enum CliError {
    /// Unreadable or malformed input.
    Parse(String),
    Core(Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse(_) | CliError::Core(Error::Malformed(_)) => 2,
            CliError::Core(Error::Dispatch { .. }) => 4,
            CliError::Core(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Parse(msg) => write!(f, "{msg}"),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

type CliResult<T> = Result<T, CliError>;

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> CliResult<T> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

fn emit<T: Serialize>(out: &OutputArgs, report: &T, table: impl FnOnce(&T) -> String) -> CliResult<()> {
    let text = match out.format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("reports serialize");
            s.push('\n');
            s
        }
        Format::Table => table(report),
    };
    match &out.output {
        Some(path) => fs::write(path, text).map_err(|e| CliError::Parse(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn infer_family(params: &ParamArgs) -> Family {
    if params.tau1.is_some() || params.tau2.is_some() {
        Family::Pert2II
    } else if params.eta1.is_some() || params.eta2.is_some() || params.xi.is_some() {
        Family::Pert2I
    } else if params.tau.is_some() {
        Family::CoRecursive
    } else {
        Family::Main
    }
}

/// The sequence named on the command line and the table size it supports
/// (`None` for rule-based families, which extend indefinitely).
fn load_spec(source: &SourceArgs) -> CliResult<(MpsSpec, Option<usize>)> {
    if let Some(path) = &source.sc_file {
        let sc: StructureCoefficients = read_json(path)?;
        let nmax = sc.nmax();
        return Ok((MpsSpec::Explicit(sc), Some(nmax)));
    }
    let params = source.params.build()?;
    let family = source
        .family
        .map(Family::from)
        .unwrap_or_else(|| infer_family(&source.params));
    Ok((cases::family_spec(family, &params)?, None))
}

fn quad_map(params: &ParamArgs) -> QuadMap {
    let or_zero = |v: &Option<Rational>| v.clone().unwrap_or_else(Rational::zero);
    QuadMap::new(or_zero(&params.p), or_zero(&params.q), or_zero(&params.a))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecomposeReport {
    pub nmax: usize,
    pub reconstruction: bool,
    pub matrix: QdMatrix,
}

pub fn decompose(args: &DecomposeArgs) -> CliResult<bool> {
    let (spec, limit) = load_spec(&args.source)?;
    let nmax = args.nmax.unwrap_or_else(|| limit.map_or(12, |l| (l / 2).min(12)));
    let sc = spec.table(2 * nmax)?;
    let components = qd(&sc, &quad_map(&args.source.params), nmax)?;
    let reconstruction = check_reconstruction(&components, &generate_from_table(&sc));
    let report = DecomposeReport {
        nmax,
        reconstruction,
        matrix: components.into(),
    };
    emit(&args.out, &report, render::decompose)?;
    Ok(reconstruction)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalyzeReport {
    pub nmax: usize,
    pub dmax: usize,
    pub classical: bool,
    /// Orders `d ≤ dmax` whose symmetry pattern the materialized prefix follows.
    pub d_symmetric: Vec<usize>,
    pub orthogonality: OrthoReport,
    pub derivative: OrthoReport,
}

fn resolve_dmax(dmax: Option<usize>, nmax: usize) -> CliResult<usize> {
    let d = dmax.unwrap_or(nmax);
    if d == 0 || d > nmax {
        return Err(CliError::Parse(format!("dmax must lie in 1..={nmax}")));
    }
    Ok(d)
}

/// `W_0..W_{nmax+4}`: enough rows to test every order up to `nmax` on the
/// sequence and on its derivative.
fn materialize(spec: &MpsSpec, nmax: usize) -> CliResult<Vec<Poly>> {
    Ok(generate_mps(spec, nmax + 4)?)
}

pub fn analyze(args: &AnalyzeArgs) -> CliResult<bool> {
    let dmax = resolve_dmax(args.dmax, args.nmax)?;
    let (spec, _) = load_spec(&args.source)?;
    let polys = materialize(&spec, args.nmax)?;
    let hahn = hahn_from_polys(&polys, dmax)?;
    let report = AnalyzeReport {
        nmax: args.nmax,
        dmax,
        classical: hahn.classical(),
        d_symmetric: (1..=dmax).filter(|&d| check_d_symmetric(&polys, d)).collect(),
        orthogonality: hahn.base,
        derivative: hahn.derivative,
    };
    emit(&args.out, &report, render::analyze)?;
    Ok(true)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeriveReport {
    pub nmax: usize,
    /// `W^{[1]}_0..W^{[1]}_nmax`.
    pub derivative: Vec<Poly>,
    pub orthogonality: OrthoReport,
}

pub fn derive(args: &AnalyzeArgs) -> CliResult<bool> {
    let dmax = resolve_dmax(args.dmax, args.nmax)?;
    let (spec, _) = load_spec(&args.source)?;
    let polys = materialize(&spec, args.nmax)?;
    let deriv = derivative_sequence(&polys, &extract_sc(&polys)?)?;
    let orthogonality = detect_orthogonality_order(&extract_sc(&deriv)?, dmax)?;
    let report = DeriveReport {
        nmax: args.nmax,
        derivative: deriv[..=args.nmax].to_vec(),
        orthogonality,
    };
    emit(&args.out, &report, render::derive)?;
    Ok(true)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub case_id: CaseId,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub nmax: usize,
    pub dmax: usize,
    pub passed: usize,
    pub total: usize,
    pub verdicts: Vec<CaseVerdict>,
}

fn verify_all(
    case: CaseId,
    tuples: &[CaseParams],
    seed: Option<u64>,
    nmax: usize,
    dmax: usize,
) -> Vec<Result<CaseVerdict, Error>> {
    tuples
        .par_iter()
        .map(|params| {
            cases::verify_case(case, params, nmax, dmax).map(|mut v| {
                v.seed = seed;
                v
            })
        })
        .collect()
}

pub fn verify_case(args: &VerifyArgs) -> CliResult<bool> {
    let dmax = resolve_dmax(args.dmax, args.nmax)?;
    let (tuples, seed) = if args.params.any_base() {
        (vec![args.params.build()?], None)
    } else {
        (
            sample_many(args.case, args.seed, args.samples as usize)?,
            Some(args.seed),
        )
    };
    let verdicts = verify_all(args.case, &tuples, seed, args.nmax, dmax)
        .into_iter()
        .collect::<Result<Vec<_>, _>>()?;
    let passed = verdicts.iter().filter(|v| v.passed).count();
    let report = VerifyReport {
        case_id: args.case,
        seed,
        nmax: args.nmax,
        dmax,
        passed,
        total: verdicts.len(),
        verdicts,
    };
    emit(&args.out, &report, render::verify)?;
    Ok(report.passed == report.total)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkippedTuple {
    pub index: usize,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlaggedTuple {
    pub index: usize,
    pub params: CaseParams,
    /// Component labels or the error that stopped verification.
    pub details: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepReport {
    pub case_id: CaseId,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub nmax: usize,
    pub dmax: usize,
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub exceptional: usize,
    pub skipped: usize,
    pub skipped_tuples: Vec<SkippedTuple>,
    pub failures: Vec<FlaggedTuple>,
    pub exceptional_tuples: Vec<FlaggedTuple>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verdicts: Option<Vec<CaseVerdict>>,
}

enum TupleOutcome {
    Skipped(String),
    Verdict(Box<CaseVerdict>),
    Failed(String),
}

fn sweep_one(case: CaseId, params: &CaseParams, seed: Option<u64>, nmax: usize, dmax: usize) -> TupleOutcome {
    if let Err(e) = cases::check_admissible(case, params) {
        return TupleOutcome::Skipped(e.to_string());
    }
    match cases::verify_case(case, params, nmax, dmax) {
        Ok(mut v) => {
            v.seed = seed;
            TupleOutcome::Verdict(Box::new(v))
        }
        Err(e) => TupleOutcome::Failed(e.to_string()),
    }
}

pub fn sweep(args: &SweepArgs) -> CliResult<bool> {
    let dmax = resolve_dmax(args.dmax, args.nmax)?;
    let (tuples, seed) = match &args.grid {
        Some(path) => (read_json::<Vec<CaseParams>>(path)?, None),
        None => (
            sample_many(args.case, args.seed, args.samples as usize)?,
            Some(args.seed),
        ),
    };
    let outcomes: Vec<TupleOutcome> = tuples
        .par_iter()
        .map(|params| sweep_one(args.case, params, seed, args.nmax, dmax))
        .collect();

    let mut report = SweepReport {
        case_id: args.case,
        seed,
        nmax: args.nmax,
        dmax,
        total: tuples.len(),
        passed: 0,
        failed: 0,
        exceptional: 0,
        skipped: 0,
        skipped_tuples: Vec::new(),
        failures: Vec::new(),
        exceptional_tuples: Vec::new(),
        verdicts: None,
    };
    let mut verdicts = Vec::new();
    for (index, (outcome, params)) in outcomes.into_iter().zip(&tuples).enumerate() {
        match outcome {
            TupleOutcome::Skipped(reason) => {
                report.skipped += 1;
                report.skipped_tuples.push(SkippedTuple { index, reason });
            }
            TupleOutcome::Failed(error) => {
                report.failed += 1;
                report.failures.push(FlaggedTuple {
                    index,
                    params: params.clone(),
                    details: vec![error],
                });
            }
            TupleOutcome::Verdict(v) => {
                if v.passed {
                    report.passed += 1;
                } else if v.exceptional {
                    report.exceptional += 1;
                    let details = v
                        .component_reports
                        .iter()
                        .filter(|r| r.exceptional)
                        .map(|r| r.label.clone())
                        .collect();
                    report.exceptional_tuples.push(FlaggedTuple {
                        index,
                        params: params.clone(),
                        details,
                    });
                } else {
                    report.failed += 1;
                    let mut details: Vec<String> = v
                        .component_reports
                        .iter()
                        .filter(|r| !r.matches_expected)
                        .map(|r| r.label.clone())
                        .collect();
                    details.extend(v.identities.iter().filter(|i| !i.holds).map(|i| i.claim.clone()));
                    report.failures.push(FlaggedTuple {
                        index,
                        params: params.clone(),
                        details,
                    });
                }
                if args.verdicts || (args.hunt && v.exceptional) {
                    verdicts.push(*v);
                }
            }
        }
    }
    if args.verdicts || args.hunt {
        report.verdicts = Some(verdicts);
    }
    emit(&args.out, &report, render::sweep)?;
    Ok(report.failed == 0 && (args.hunt || report.exceptional == 0))
}
