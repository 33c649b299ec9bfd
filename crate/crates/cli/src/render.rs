//! Output rendering. Text output is line oriented and stable; JSON output
//! is a single line whose scalar values are exact decimal strings when the
//! quantity can be arbitrarily large, and plain JSON integers for small
//! structural counts. Field order is fixed by construction order.

use std::fmt::Display;
use std::fmt::Write as _;

use apsolve_core::ap_solver::{AverageOutcome, SolverPlan, StreamOutcome};
use apsolve_core::converse_analysis::{DegenerateCheck, EnumerationReport};
use apsolve_core::equivalence_demos::PartialSum;
use apsolve_core::set_sources::{ApRun, PrimeLikeReport};
use apsolve_core::{IntegerAp, IntegerBasis, IntegerMatrix};
use num_bigint::BigInt;
use serde_json::{json, Value};

fn scalar(value: &impl Display) -> Value {
    Value::String(value.to_string())
}

fn scalar_list<T: Display>(values: &[T]) -> Value {
    Value::Array(values.iter().map(|v| scalar(v)).collect())
}

fn vector_list(vectors: &[Vec<BigInt>]) -> Value {
    Value::Array(vectors.iter().map(|v| scalar_list(v)).collect())
}

fn join<T: Display>(values: &[T]) -> String {
    values.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
}

pub fn ap_json(ap: &IntegerAp) -> Value {
    json!({"k": ap.len(), "a": scalar(ap.base()), "d": scalar(ap.step())})
}

pub fn ap_line(ap: &IntegerAp) -> String {
    format!("ap k={} a={} d={}", ap.len(), ap.base(), ap.step())
}

fn plan_json(plan: &SolverPlan) -> Value {
    json!({
        "entry_bound": plan.entry_bound,
        "gap_dimension": plan.gap_dimension,
        "volume_each": plan.volume_each,
        "required_ap_length": plan.required_ap_length,
    })
}

fn basis_json(basis: &IntegerBasis) -> Value {
    json!({
        "ones_first": basis.is_ones_first(),
        "vectors": vector_list(basis.vectors()),
    })
}

pub struct CheckReport {
    pub matrix: IntegerMatrix,
    pub rank: usize,
    pub nullspace_dimension: usize,
    pub row_sums: Vec<BigInt>,
    pub ones_in_nullspace: bool,
    pub null_diagonal: bool,
    pub basis: IntegerBasis,
}

pub fn check_json(report: &CheckReport) -> Value {
    json!({
        "rows": report.matrix.nrows(),
        "cols": report.matrix.ncols(),
        "rank": report.rank,
        "nullspace_dimension": report.nullspace_dimension,
        "row_sums": scalar_list(&report.row_sums),
        "ones_in_nullspace": report.ones_in_nullspace,
        "null_diagonal": report.null_diagonal,
        "basis": basis_json(&report.basis),
    })
}

pub fn check_text(report: &CheckReport) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "null-diagonal: {}, dim {}",
        report.null_diagonal, report.nullspace_dimension
    );
    let _ = writeln!(out, "rank: {}", report.rank);
    let _ = writeln!(out, "rows: {}", report.matrix.nrows());
    let _ = writeln!(out, "cols: {}", report.matrix.ncols());
    let _ = writeln!(out, "row sums: {}", join(&report.row_sums));
    let _ = writeln!(out, "ones in nullspace: {}", report.ones_in_nullspace);
    for (i, vector) in report.basis.vectors().iter().enumerate() {
        let _ = writeln!(out, "basis vector {}: {}", i + 1, join(vector));
    }
    out
}

pub fn solve_json(outcome: &StreamOutcome<BigInt>) -> Value {
    let solutions: Vec<Value> = outcome
        .solutions
        .iter()
        .map(|s| {
            json!({
                "x": scalar_list(&s.x),
                "ap": ap_json(&s.witness),
                "center": scalar(&s.center),
                "steps": scalar_list(&s.gap_steps),
            })
        })
        .collect();
    json!({
        "nullspace_dimension": outcome.nullspace_dimension,
        "solving_basis": vector_list(outcome.solving_basis.vectors()),
        "plan": plan_json(&outcome.plan),
        "exhausted": outcome.exhausted,
        "solutions": solutions,
    })
}

pub fn solve_text(outcome: &StreamOutcome<BigInt>) -> String {
    let mut out = String::new();
    let plan = &outcome.plan;
    let _ = writeln!(
        out,
        "plan: entry bound {}, box dimension {}, volume {}, progression length {}",
        plan.entry_bound, plan.gap_dimension, plan.volume_each, plan.required_ap_length
    );
    for (i, s) in outcome.solutions.iter().enumerate() {
        let _ = writeln!(
            out,
            "solution {}: x = {} | {} | center {} | steps {}",
            i + 1,
            join(&s.x),
            ap_line(&s.witness),
            s.center,
            join(&s.gap_steps)
        );
    }
    let _ = writeln!(out, "exhausted: {}", outcome.exhausted);
    out
}

pub fn converse_json(report: &EnumerationReport<BigInt>) -> Value {
    let solutions: Vec<Value> = report
        .solutions
        .iter()
        .map(|s| json!({"x": scalar_list(&s.x), "ap": ap_json(&s.witness)}))
        .collect();
    json!({
        "violating_row": report.row,
        "C": scalar(&report.abs_sum),
        "k": report.k,
        "base_bound": report.base_bound,
        "step_bound": report.step_bound,
        "search_bound": report.search_bound,
        "candidates_examined": report.candidates_examined,
        "lambda_space_per_ap": scalar(&report.lambda_space_per_ap),
        "qualifying_aps": report.qualifying_aps,
        "scan_bound": report.scan_bound,
        "scan_solution_count": report.scan_solution_count,
        "brute_force_agreement": report.brute_force_agreement,
        "prime_like_violations": report.prime_like_violations,
        "solutions": solutions,
    })
}

pub fn converse_text(report: &EnumerationReport<BigInt>) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "violating row: {} (C = {})", report.row, report.abs_sum);
    let _ = writeln!(out, "k: {}", report.k);
    let _ = writeln!(out, "window: base <= {}, step <= {}", report.base_bound, report.step_bound);
    let _ = writeln!(out, "candidates examined: {}", report.candidates_examined);
    let _ = writeln!(out, "assignments per progression: {}", report.lambda_space_per_ap);
    let _ = writeln!(out, "qualifying progressions: {}", report.qualifying_aps);
    for s in &report.solutions {
        let _ = writeln!(out, "solution: x = {} | {}", join(&s.x), ap_line(&s.witness));
    }
    let _ = writeln!(out, "solutions: {}", report.solutions.len());
    let _ = writeln!(out, "scan bound: {}", report.scan_bound);
    let _ = writeln!(out, "scan solutions: {}", report.scan_solution_count);
    let _ = writeln!(out, "brute-force agreement: {}", report.brute_force_agreement);
    let _ = writeln!(out, "prime-like violations: {}", report.prime_like_violations);
    out
}

pub fn degenerate_json(check: &DegenerateCheck) -> Value {
    json!({
        "k": check.k,
        "search_bound": check.search_bound,
        "aps_examined": check.aps_examined,
        "solutions_found": check.solutions_found,
    })
}

pub fn degenerate_text(check: &DegenerateCheck) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "k: {}", check.k);
    let _ = writeln!(out, "search bound: {}", check.search_bound);
    let _ = writeln!(out, "progressions examined: {}", check.aps_examined);
    let _ = writeln!(out, "solutions found: {}", check.solutions_found);
    out
}

fn run_json(run: &ApRun) -> Value {
    json!({
        "a": scalar(&run.base),
        "d": scalar(&run.step),
        "length": run.length,
        "audited_length": run.audited_length,
        "backward_extendable": run.backward_extendable,
    })
}

pub fn audit_json(report: &PrimeLikeReport) -> Value {
    json!({
        "k_max": report.k_max,
        "search_bound": report.search_bound,
        "runs_examined": report.runs_examined,
        "odd_step_runs": report.odd_step_runs,
        "violations": report.violations.iter().map(run_json).collect::<Vec<_>>(),
        "maximal_violations": report.maximal_violations.iter().map(run_json).collect::<Vec<_>>(),
        "prime_like": report.is_prime_like(),
    })
}

pub fn audit_text(report: &PrimeLikeReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "k max: {}", report.k_max);
    let _ = writeln!(out, "search bound: {}", report.search_bound);
    let _ = writeln!(out, "runs examined: {}", report.runs_examined);
    let _ = writeln!(out, "odd step runs: {}", report.odd_step_runs);
    for run in &report.violations {
        let _ = writeln!(
            out,
            "violation: a={} d={} length={} maximal={}",
            run.base,
            run.step,
            run.length,
            run.is_maximal()
        );
    }
    let _ = writeln!(out, "violations: {}", report.violations.len());
    let _ = writeln!(out, "maximal violations: {}", report.maximal_violations.len());
    let _ = writeln!(out, "prime-like: {}", report.is_prime_like());
    out
}

pub fn ap_list_json(k: u64, bound: u64, aps: &[IntegerAp], exhausted: bool) -> Value {
    json!({
        "k": k,
        "bound": bound,
        "aps": aps.iter().map(ap_json).collect::<Vec<_>>(),
        "exhausted": exhausted,
    })
}

pub fn ap_list_text(aps: &[IntegerAp], exhausted: bool) -> String {
    let mut out = String::new();
    for ap in aps {
        let _ = writeln!(out, "{}", ap_line(ap));
    }
    if aps.is_empty() {
        let _ = writeln!(out, "none");
    }
    let _ = writeln!(out, "exhausted: {exhausted}");
    out
}

pub fn averages_json(n: usize, outcome: &AverageOutcome<BigInt>) -> Value {
    let tuples: Vec<Value> = outcome
        .tuples
        .iter()
        .map(|t| {
            json!({
                "tuple": scalar_list(&t.tuple),
                "average": scalar(&t.average),
                "ap": ap_json(&t.witness),
            })
        })
        .collect();
    json!({"n": n, "tuples": tuples, "exhausted": outcome.exhausted})
}

pub fn averages_text(n: usize, outcome: &AverageOutcome<BigInt>) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "tuple size: {n}");
    for (i, t) in outcome.tuples.iter().enumerate() {
        let _ = writeln!(
            out,
            "tuple {}: ({}) average {} | {}",
            i + 1,
            join(&t.tuple),
            t.average,
            ap_line(&t.witness)
        );
    }
    let _ = writeln!(out, "exhausted: {}", outcome.exhausted);
    out
}

pub fn demo_json(n: u64, rank: usize, dim: usize, aps: &[IntegerAp]) -> Value {
    json!({
        "n": n,
        "rank": rank,
        "nullspace_dimension": dim,
        "aps": aps.iter().map(ap_json).collect::<Vec<_>>(),
    })
}

pub fn demo_text(n: u64, rank: usize, dim: usize, aps: &[IntegerAp]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "n: {n}");
    let _ = writeln!(out, "rank: {rank}");
    let _ = writeln!(out, "nullspace dimension: {dim}");
    for ap in aps {
        let _ = writeln!(out, "{}", ap_line(ap));
    }
    let _ = writeln!(out, "progressions found: {}", aps.len());
    out
}

pub fn et_sum_json(bound: u64, digits: usize, partial: &PartialSum) -> Value {
    json!({
        "bound": bound,
        "terms": partial.terms,
        "skipped_zero": partial.skipped_zero,
        "numerator": scalar(partial.sum.numer()),
        "denominator": scalar(partial.sum.denom()),
        "decimal": partial.decimal(digits),
    })
}

pub fn et_sum_text(bound: u64, digits: usize, partial: &PartialSum) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "bound: {bound}");
    let _ = writeln!(out, "terms: {}", partial.terms);
    let _ = writeln!(out, "skipped zero: {}", partial.skipped_zero);
    let _ = writeln!(out, "sum: {}/{}", partial.sum.numer(), partial.sum.denom());
    let _ = writeln!(out, "decimal: {}", partial.decimal(digits));
    out
}
