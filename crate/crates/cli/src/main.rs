//! Command-line front end. One subcommand per core entry point, a stable
//! text rendering by default, `--json` for the machine-readable form, and
//! three exit codes: 0 for success, 2 for anything wrong with the request,
//! 1 for a broken internal invariant (which should never fire).
//!
//! Every run with identical inputs produces byte-identical output; there is
//! no randomness, no timestamps, and no locale dependence anywhere.

mod input;
mod render;

use std::process::ExitCode;

use apsolve_core::ap_solver::{average_tuples, solution_stream, SolverError};
use apsolve_core::converse_analysis::{
    classify_matrix, enumerate_constrained_solutions, Classification, ConverseError,
};
use apsolve_core::equivalence_demos::{
    erdos_turan_partial_sum, progression_matrix, zero_solution_to_ap_demo, DemoError,
};
use apsolve_core::exact_linalg::LinalgError;
use apsolve_core::set_sources::{audit_prime_like, find_ap, find_next_ap, SourceError};
use apsolve_core::{IntegerAp, IntegerMatrix};
use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use serde_json::{json, Value};

/// Failures split by who must act: the caller (validation) or us (internal).
#[derive(Debug)]
pub enum CliError {
    Validation(String),
    Internal(String),
}

impl CliError {
    pub fn validation(message: impl Into<String>) -> Self {
        CliError::Validation(message.into())
    }

    pub fn internal(message: impl Into<String>) -> Self {
        CliError::Internal(message.into())
    }
}

impl From<SolverError> for CliError {
    fn from(e: SolverError) -> Self {
        match &e {
            SolverError::InvariantViolation(_) => CliError::internal(e.to_string()),
            _ => CliError::validation(e.to_string()),
        }
    }
}

impl From<ConverseError> for CliError {
    fn from(e: ConverseError) -> Self {
        match e {
            ConverseError::InvariantViolation(_) => CliError::internal(e.to_string()),
            ConverseError::Solver(inner) => inner.into(),
            other => CliError::validation(other.to_string()),
        }
    }
}

impl From<DemoError> for CliError {
    fn from(e: DemoError) -> Self {
        match &e {
            DemoError::InvariantViolation(_) => CliError::internal(e.to_string()),
            _ => CliError::validation(e.to_string()),
        }
    }
}

impl From<SourceError> for CliError {
    fn from(e: SourceError) -> Self {
        CliError::validation(e.to_string())
    }
}

impl From<LinalgError> for CliError {
    fn from(e: LinalgError) -> Self {
        CliError::validation(e.to_string())
    }
}

#[derive(Parser)]
#[command(
    name = "apsolve",
    version,
    about = "Arithmetic progressions as solutions of integer linear systems"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Rank, nullspace, row sums, and the null-diagonal verdict of a matrix
    Check(CheckArgs),
    /// Stream solutions with all coordinates drawn from a set
    Solve(SolveArgs),
    /// Exhaust the finite window a nonzero-row-sum system confines solutions to
    Converse(ConverseArgs),
    /// Sort a matrix into infinite-family, finite, or degenerate, with evidence
    Classify(ClassifyArgs),
    /// List length-k progressions contained in a set
    FindAp(FindApArgs),
    /// Audit every maximal progression of a set for coprime base and step
    AuditPrimelike(AuditArgs),
    /// Demonstrations tying progressions in a set to the solver
    #[command(subcommand)]
    Demo(DemoCommand),
}

#[derive(Args)]
struct CheckArgs {
    /// Matrix: a file path or an inline [[...],[...]] literal
    #[arg(short, long)]
    matrix: String,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct SolveArgs {
    /// Matrix: a file path or an inline [[...],[...]] literal
    #[arg(short, long, required_unless_present = "averages", conflicts_with = "averages")]
    matrix: Option<String>,
    /// Search for N-tuples whose average is again a member instead
    #[arg(long, value_name = "N")]
    averages: Option<usize>,
    /// Set to draw coordinates from: primes, naturals, multiples:M, file:PATH
    #[arg(long)]
    source: String,
    /// Largest value the witness search may touch
    #[arg(long)]
    bound: u64,
    /// Stop after this many solutions
    #[arg(long, default_value_t = 10)]
    count: usize,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct ConverseArgs {
    /// Matrix: a file path or an inline [[...],[...]] literal
    #[arg(short, long)]
    matrix: String,
    /// Progression length the solutions are constrained to
    #[arg(short)]
    k: u64,
    /// Set the solution coordinates must come from
    #[arg(long)]
    source: String,
    /// Bound for the independent cross-checking scan
    #[arg(long)]
    bound: u64,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct ClassifyArgs {
    /// Matrix: a file path or an inline [[...],[...]] literal
    #[arg(short, long)]
    matrix: String,
    /// Progression length used by the finite and degenerate branches
    #[arg(short, default_value_t = 3)]
    k: u64,
    /// Set the solution coordinates must come from
    #[arg(long)]
    source: String,
    /// Search bound for whichever branch runs
    #[arg(long)]
    bound: u64,
    /// Sample size for the infinite-family branch
    #[arg(long, default_value_t = 5)]
    count: usize,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct FindApArgs {
    /// Set to search in
    #[arg(long)]
    source: String,
    /// Progression length
    #[arg(short)]
    k: u64,
    /// Largest element a progression may reach
    #[arg(long)]
    bound: u64,
    /// How many progressions to list
    #[arg(long, default_value_t = 1)]
    count: usize,
    /// Resume strictly after this base,step pair
    #[arg(long, value_name = "A,D")]
    after: Option<String>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct AuditArgs {
    /// Set to audit
    #[arg(long)]
    source: String,
    /// Audit maximal runs of every length from 3 up to this
    #[arg(long, default_value_t = 5)]
    k_max: u64,
    /// Largest element considered
    #[arg(long)]
    bound: u64,
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum DemoCommand {
    /// Recover progressions of a set as solutions of the second-difference system
    Equivalence(EquivalenceArgs),
    /// Exact partial sum of reciprocals of a set's members
    EtSum(EtSumArgs),
}

#[derive(Args)]
struct EquivalenceArgs {
    /// Set to demonstrate on
    #[arg(long)]
    source: String,
    /// Progression length, at least 3
    #[arg(short)]
    n: u64,
    /// Largest element the search may touch
    #[arg(long)]
    bound: u64,
    /// How many progressions to certify
    #[arg(long, default_value_t = 3)]
    count: usize,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct EtSumArgs {
    /// Set whose reciprocals are summed
    #[arg(long)]
    source: String,
    /// Sum over members up to this bound
    #[arg(long)]
    bound: u64,
    /// Decimal digits to print alongside the exact fraction
    #[arg(long, default_value_t = 12)]
    digits: usize,
    #[arg(long)]
    json: bool,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            return match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = err.print();
                    ExitCode::SUCCESS
                }
                _ => {
                    emit_diagnostic("validation", &err.to_string());
                    ExitCode::from(2)
                }
            };
        }
    };
    match run(cli.command) {
        Ok(output) => {
            print!("{output}");
            ExitCode::SUCCESS
        }
        Err(CliError::Validation(message)) => {
            emit_diagnostic("validation", &message);
            ExitCode::from(2)
        }
        Err(CliError::Internal(message)) => {
            emit_diagnostic("internal", &message);
            ExitCode::from(1)
        }
    }
}

/// One line of JSON on the error stream, so scripts can tell what went wrong
/// without scraping prose.
fn emit_diagnostic(kind: &str, message: &str) {
    eprintln!("{}", json!({"error": kind, "message": message}));
}

fn emit(as_json: bool, value: Value, text: String) -> String {
    if as_json {
        format!("{value}\n")
    } else {
        text
    }
}

fn run(command: Command) -> Result<String, CliError> {
    match command {
        Command::Check(args) => run_check(args),
        Command::Solve(args) => run_solve(args),
        Command::Converse(args) => run_converse(args),
        Command::Classify(args) => run_classify(args),
        Command::FindAp(args) => run_find_ap(args),
        Command::AuditPrimelike(args) => run_audit(args),
        Command::Demo(DemoCommand::Equivalence(args)) => run_equivalence(args),
        Command::Demo(DemoCommand::EtSum(args)) => run_et_sum(args),
    }
}

fn run_check(args: CheckArgs) -> Result<String, CliError> {
    let matrix = input::load_matrix(&args.matrix)?;
    let basis = matrix.nullspace_basis(matrix.is_null_diagonal())?;
    let report = render::CheckReport {
        rank: matrix.rank(),
        nullspace_dimension: matrix.nullspace_dimension(),
        row_sums: matrix.row_sums(),
        ones_in_nullspace: matrix.contains_ones_vector(),
        null_diagonal: matrix.is_null_diagonal(),
        basis,
        matrix,
    };
    Ok(emit(args.json, render::check_json(&report), render::check_text(&report)))
}

fn run_solve(args: SolveArgs) -> Result<String, CliError> {
    let source = input::resolve_source(&args.source, args.bound)?;
    if let Some(n) = args.averages {
        let outcome = average_tuples::<BigInt>(source.as_ref(), n, args.count, args.bound)?;
        return Ok(emit(
            args.json,
            render::averages_json(n, &outcome),
            render::averages_text(n, &outcome),
        ));
    }
    let matrix = input::load_matrix(args.matrix.as_deref().expect("clap enforces the group"))?;
    let outcome = solution_stream(&matrix, source.as_ref(), args.count, args.bound)?;
    Ok(emit(args.json, render::solve_json(&outcome), render::solve_text(&outcome)))
}

fn run_converse(args: ConverseArgs) -> Result<String, CliError> {
    let matrix = input::load_matrix(&args.matrix)?;
    let source = input::resolve_source(&args.source, args.bound)?;
    let report = enumerate_constrained_solutions(&matrix, args.k, source.as_ref(), args.bound)?;
    Ok(emit(args.json, render::converse_json(&report), render::converse_text(&report)))
}

fn run_classify(args: ClassifyArgs) -> Result<String, CliError> {
    let matrix = input::load_matrix(&args.matrix)?;
    let source = input::resolve_source(&args.source, args.bound)?;
    let verdict = classify_matrix(&matrix, args.k, source.as_ref(), args.bound, args.count)?;
    let (name, body_json, body_text, key) = match &verdict {
        Classification::InfiniteFamily(stream) => (
            "infinite-family",
            render::solve_json(stream),
            render::solve_text(stream),
            "stream",
        ),
        Classification::Finite(report) => (
            "finite",
            render::converse_json(report),
            render::converse_text(report),
            "enumeration",
        ),
        Classification::Degenerate(check) => (
            "degenerate",
            render::degenerate_json(check),
            render::degenerate_text(check),
            "degenerate",
        ),
    };
    let value = json!({"verdict": name, key: body_json});
    let text = format!("verdict: {name}\n{body_text}");
    Ok(emit(args.json, value, text))
}

fn run_find_ap(args: FindApArgs) -> Result<String, CliError> {
    let source = input::resolve_source(&args.source, args.bound)?;
    let mut aps: Vec<IntegerAp> = Vec::new();
    let mut cursor = match &args.after {
        Some(text) => Some(input::parse_after(text)?),
        None => None,
    };
    let mut exhausted = false;
    while aps.len() < args.count {
        let found: Option<IntegerAp> = match cursor {
            None => find_ap(source.as_ref(), args.k, args.bound)?,
            Some(after) => find_next_ap(source.as_ref(), args.k, args.bound, after)?,
        };
        let Some(ap) = found else {
            exhausted = true;
            break;
        };
        cursor = Some((
            u64::try_from(ap.base().clone()).expect("search bases are non-negative"),
            u64::try_from(ap.step().clone()).expect("search steps are positive"),
        ));
        aps.push(ap);
    }
    Ok(emit(
        args.json,
        render::ap_list_json(args.k, args.bound, &aps, exhausted),
        render::ap_list_text(&aps, exhausted),
    ))
}

fn run_audit(args: AuditArgs) -> Result<String, CliError> {
    let source = input::resolve_source(&args.source, args.bound)?;
    let report = audit_prime_like(source.as_ref(), args.k_max, args.bound)?;
    Ok(emit(args.json, render::audit_json(&report), render::audit_text(&report)))
}

fn run_equivalence(args: EquivalenceArgs) -> Result<String, CliError> {
    let source = input::resolve_source(&args.source, args.bound)?;
    let matrix: IntegerMatrix = progression_matrix(args.n as usize)?;
    let aps: Vec<IntegerAp> =
        zero_solution_to_ap_demo(source.as_ref(), args.n, args.count, args.bound)?;
    Ok(emit(
        args.json,
        render::demo_json(args.n, matrix.rank(), matrix.nullspace_dimension(), &aps),
        render::demo_text(args.n, matrix.rank(), matrix.nullspace_dimension(), &aps),
    ))
}

fn run_et_sum(args: EtSumArgs) -> Result<String, CliError> {
    let source = input::resolve_source(&args.source, args.bound)?;
    let partial = erdos_turan_partial_sum(source.as_ref(), args.bound)?;
    Ok(emit(
        args.json,
        render::et_sum_json(args.bound, args.digits, &partial),
        render::et_sum_text(args.bound, args.digits, &partial),
    ))
}
