//! The other direction: when in-set solutions are provably scarce.
//!
//! Suppose some row of the matrix has a nonzero sum of entries, and write
//! `C` for the sum of that row's absolute values. If a solution reads its
//! coordinates off a progression with base `b`, step `d`, `gcd(b, d) = 1`,
//! and length `k`, then that row forces `b <= C*k` and `d <= C*k`: the row
//! evaluated at the solution is `b * (row sum) + d * (weighted offsets)`,
//! and with coprime `b` and `d` both factors are pinned down to a window of
//! size `C*k`. So for sets whose progressions are all coprime in this sense
//! (the primes are the model; see
//! [`crate::set_sources::audit_prime_like`]), only finitely many candidate
//! progressions can carry solutions at all, and this module enumerates
//! every single one: `(C*k + 1) * C*k` base/step pairs, times `k^n`
//! coordinate assignments per qualifying progression.
//!
//! [`enumerate_constrained_solutions`] runs that bounded enumeration and
//! then replays the question through an unrelated route (walk all
//! progressions in the set up to a bound large enough to cover the window,
//! try every assignment with no pruning) and reports whether the two answer
//! sets agree. [`classify_matrix`] sorts an arbitrary matrix into the
//! infinite-family, finite, or degenerate regime.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::ap_solver::{solution_stream, SolverError, StreamOutcome};
use crate::exact_linalg::Matrix;
use crate::num::{nat, Int};
use crate::progressions::Ap;
use crate::set_sources::{audit_prime_like, ApSearcher, SetSource, SourceError};

#[derive(Debug, Error)]
pub enum ConverseError {
    #[error("every row sums to zero; the finiteness argument needs a row with nonzero sum")]
    NoViolatingRow,
    #[error("constrained enumeration needs progression length at least 3, got {k}")]
    KTooSmall { k: u64 },
    #[error("enumeration bounds do not fit in 64 bits")]
    BoundsTooLarge,
    #[error("internal invariant violated: {0}")]
    InvariantViolation(String),
    #[error(transparent)]
    Source(#[from] SourceError),
    #[error(transparent)]
    Solver(#[from] SolverError),
}

/// A row whose entries do not sum to zero, with the absolute-value sum `C`
/// that drives the finiteness bounds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowViolation<T> {
    /// Number of the first such row, 1-based as rows of a matrix are
    /// conventionally counted.
    pub row: usize,
    /// Sum of the row's absolute values.
    pub abs_sum: T,
}

/// First row with nonzero entry sum, or `None` when all row sums vanish.
pub fn violating_row<T: Int>(matrix: &Matrix<T>) -> Option<RowViolation<T>> {
    matrix.row_sums().iter().position(|s| !s.is_zero()).map(|index| {
        let mut abs_sum = T::zero();
        for e in matrix.row(index) {
            abs_sum += e.abs();
        }
        RowViolation { row: index + 1, abs_sum }
    })
}

/// A solution found by constrained enumeration, with the progression its
/// coordinates came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstrainedSolution<T> {
    pub x: Vec<T>,
    pub witness: Ap<T>,
}

/// Everything the bounded enumeration saw and concluded.
#[derive(Debug, Clone)]
pub struct EnumerationReport<T> {
    /// Number of the violating row used for the bounds, 1-based.
    pub row: usize,
    /// `C`, the absolute-value sum of that row.
    pub abs_sum: T,
    pub k: u64,
    /// Bases are confined to `0 ..= base_bound`, which is `C*k`.
    pub base_bound: u64,
    /// Steps are confined to `1 ..= step_bound`, also `C*k`.
    pub step_bound: u64,
    pub search_bound: u64,
    /// Solutions with coprime base and step, one record per (progression,
    /// assignment) pair that worked.
    pub solutions: Vec<ConstrainedSolution<T>>,
    /// Base/step pairs visited, always exactly `(base_bound + 1) * step_bound`.
    pub candidates_examined: u64,
    /// Assignments per qualifying progression, `k^n`.
    pub lambda_space_per_ap: u128,
    /// Candidate progressions that lay entirely inside the set.
    pub qualifying_aps: u64,
    /// Bound the independent scan used: large enough to see every element
    /// any in-window progression can reach.
    pub scan_bound: u64,
    /// Solution count of the independent scan.
    pub scan_solution_count: u64,
    /// Whether both routes produced the same set of solution vectors.
    pub brute_force_agreement: bool,
    /// Strict-reading violations from a prime-likeness audit of the source
    /// at `search_bound`; nonzero means the finiteness guarantee is void.
    pub prime_like_violations: u64,
}

/// Enumerate every solution of `matrix` whose coordinates lie on a length-`k`
/// progression in `source` with coprime base and step, by exhausting the
/// finite window the violating row permits, then cross-check against an
/// independent scan and a prime-likeness audit at `search_bound`.
pub fn enumerate_constrained_solutions<T: Int>(
    matrix: &Matrix<T>,
    k: u64,
    source: &dyn SetSource,
    search_bound: u64,
) -> Result<EnumerationReport<T>, ConverseError> {
    let violation = violating_row(matrix).ok_or(ConverseError::NoViolatingRow)?;
    if k < 3 {
        return Err(ConverseError::KTooSmall { k });
    }
    let c = violation.abs_sum.to_u64().ok_or(ConverseError::BoundsTooLarge)?;
    let ck = c.checked_mul(k).ok_or(ConverseError::BoundsTooLarge)?;
    let n = matrix.ncols();
    let lambda_space = (k as u128).checked_pow(n as u32).ok_or(ConverseError::BoundsTooLarge)?;

    let mut solutions = Vec::new();
    let mut candidates = 0u64;
    let mut qualifying = 0u64;
    for b in 0..=ck {
        'steps: for d in 1..=ck {
            candidates += 1;
            if num_integer::gcd(b, d) != 1 {
                continue;
            }
            for lam in 0..k {
                if !source.contains(b + lam * d)? {
                    continue 'steps;
                }
            }
            qualifying += 1;
            collect_assignments(matrix, k, b, d, &mut solutions)?;
        }
    }

    let reach = k.checked_mul(ck).ok_or(ConverseError::BoundsTooLarge)?;
    let scan_bound = search_bound.max(reach);
    let scan = ap_constrained_scan(matrix, k, source, scan_bound, true)?;

    let ours: BTreeSet<&Vec<T>> = solutions.iter().map(|s| &s.x).collect();
    let theirs: BTreeSet<&Vec<T>> = scan.solutions.iter().map(|s| &s.x).collect();
    let brute_force_agreement = ours == theirs;

    let audit = audit_prime_like(source, k, search_bound)?;

    Ok(EnumerationReport {
        row: violation.row,
        abs_sum: violation.abs_sum,
        k,
        base_bound: ck,
        step_bound: ck,
        search_bound,
        solutions,
        candidates_examined: candidates,
        lambda_space_per_ap: lambda_space,
        qualifying_aps: qualifying,
        scan_bound,
        scan_solution_count: scan.solutions.len() as u64,
        brute_force_agreement,
        prime_like_violations: audit.violations.len() as u64,
    })
}

/// Depth-first walk over the `k^n` coordinate assignments for one candidate
/// progression, pruned by per-row reachability intervals.
fn collect_assignments<T: Int>(
    matrix: &Matrix<T>,
    k: u64,
    b: u64,
    d: u64,
    out: &mut Vec<ConstrainedSolution<T>>,
) -> Result<(), ConverseError> {
    let m = matrix.nrows();
    let n = matrix.ncols();
    let first = nat::<T>(b).ok_or(ConverseError::BoundsTooLarge)?;
    let last = nat::<T>(b + (k - 1) * d).ok_or(ConverseError::BoundsTooLarge)?;

    // Element values are monotone in the assignment index, so each term's
    // range comes from the two endpoints.
    let mut lo = vec![vec![T::zero(); n + 1]; m];
    let mut hi = vec![vec![T::zero(); n + 1]; m];
    for (i, row) in matrix.rows_iter().enumerate() {
        for l in (0..n).rev() {
            let at_first = row[l].clone() * first.clone();
            let at_last = row[l].clone() * last.clone();
            let (tlo, thi) = if at_first <= at_last {
                (at_first, at_last)
            } else {
                (at_last, at_first)
            };
            lo[i][l] = lo[i][l + 1].clone() + tlo;
            hi[i][l] = hi[i][l + 1].clone() + thi;
        }
    }

    let values: Vec<T> = (0..k)
        .map(|lam| nat::<T>(b + lam * d).ok_or(ConverseError::BoundsTooLarge))
        .collect::<Result<_, _>>()?;
    let witness = Ap::new(k, first, nat::<T>(d).ok_or(ConverseError::BoundsTooLarge)?)
        .map_err(|e| ConverseError::InvariantViolation(e.to_string()))?;

    let mut partial = vec![T::zero(); m];
    let mut assignment = vec![0usize; n];
    walk(matrix, &values, &lo, &hi, &mut partial, &mut assignment, 0, &witness, out);
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn walk<T: Int>(
    matrix: &Matrix<T>,
    values: &[T],
    lo: &[Vec<T>],
    hi: &[Vec<T>],
    partial: &mut Vec<T>,
    assignment: &mut Vec<usize>,
    pos: usize,
    witness: &Ap<T>,
    out: &mut Vec<ConstrainedSolution<T>>,
) {
    let n = matrix.ncols();
    if pos == n {
        if partial.iter().all(|p| p.is_zero()) && assignment.iter().any(|&l| l != assignment[0]) {
            let x: Vec<T> = assignment.iter().map(|&l| values[l].clone()).collect();
            out.push(ConstrainedSolution { x, witness: witness.clone() });
        }
        return;
    }
    for (i, p) in partial.iter().enumerate() {
        // Remaining terms can move row i's total only within [lo, hi].
        if p.clone() + lo[i][pos].clone() > T::zero() || p.clone() + hi[i][pos].clone() < T::zero()
        {
            return;
        }
    }
    for (l, value) in values.iter().enumerate() {
        for (p, row) in partial.iter_mut().zip(matrix.rows_iter()) {
            *p += row[pos].clone() * value.clone();
        }
        assignment[pos] = l;
        walk(matrix, values, lo, hi, partial, assignment, pos + 1, witness, out);
        for (p, row) in partial.iter_mut().zip(matrix.rows_iter()) {
            *p -= row[pos].clone() * value.clone();
        }
    }
}

/// Outcome of the independent progression scan.
#[derive(Debug, Clone)]
pub struct ScanOutcome<T> {
    pub solutions: Vec<ConstrainedSolution<T>>,
    pub aps_examined: u64,
}

/// Walk every length-`k` progression in `source` up to `bound` (optionally
/// only those with coprime base and step) and try all `k^n` coordinate
/// assignments with a plain odometer. No shared logic with the bounded
/// enumeration: this is the cross-check route.
pub fn ap_constrained_scan<T: Int>(
    matrix: &Matrix<T>,
    k: u64,
    source: &dyn SetSource,
    bound: u64,
    require_coprime: bool,
) -> Result<ScanOutcome<T>, ConverseError> {
    let n = matrix.ncols();
    let searcher = ApSearcher::new(source, k, bound)?;
    let mut solutions = Vec::new();
    let mut aps_examined = 0u64;
    for (a, d) in searcher.iter() {
        if require_coprime && num_integer::gcd(a, d) != 1 {
            continue;
        }
        aps_examined += 1;
        let values: Vec<T> = (0..k)
            .map(|lam| nat::<T>(a + lam * d).ok_or(ConverseError::BoundsTooLarge))
            .collect::<Result<_, _>>()?;
        let witness = Ap::new(
            k,
            values[0].clone(),
            nat::<T>(d).ok_or(ConverseError::BoundsTooLarge)?,
        )
        .map_err(|e| ConverseError::InvariantViolation(e.to_string()))?;

        let mut lambda = vec![0usize; n];
        loop {
            let x: Vec<T> = lambda.iter().map(|&l| values[l].clone()).collect();
            if matrix.annihilates(&x) && lambda.iter().any(|&l| l != lambda[0]) {
                solutions.push(ConstrainedSolution { x, witness: witness.clone() });
            }
            let mut pos = n;
            let mut wrapped = true;
            while pos > 0 {
                pos -= 1;
                lambda[pos] += 1;
                if lambda[pos] < k as usize {
                    wrapped = false;
                    break;
                }
                lambda[pos] = 0;
            }
            if wrapped {
                break;
            }
        }
    }
    Ok(ScanOutcome { solutions, aps_examined })
}

/// Which regime a matrix falls into, with the evidence for the verdict.
#[derive(Debug)]
pub enum Classification<T> {
    /// Null-diagonal: solutions can be manufactured from every sufficiently
    /// long progression; a sample stream is attached.
    InfiniteFamily(StreamOutcome<T>),
    /// Some row sum is nonzero: the full constrained enumeration ran.
    Finite(EnumerationReport<T>),
    /// All row sums vanish but the nullspace is just the constant vectors:
    /// no not-all-equal solutions exist at all.
    Degenerate(DegenerateCheck),
}

/// Evidence attached to a degenerate verdict: a scan over progressions that
/// found, as it must, nothing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegenerateCheck {
    pub k: u64,
    pub search_bound: u64,
    pub aps_examined: u64,
    pub solutions_found: u64,
}

/// Sort `matrix` into its regime and gather the matching evidence:
/// a solution stream (up to `sample_count` solutions) for null-diagonal
/// matrices, the full enumeration report when a row sum is nonzero, or a
/// confirming empty scan for degenerate matrices.
pub fn classify_matrix<T: Int>(
    matrix: &Matrix<T>,
    k: u64,
    source: &dyn SetSource,
    search_bound: u64,
    sample_count: usize,
) -> Result<Classification<T>, ConverseError> {
    if matrix.is_null_diagonal() {
        let stream = solution_stream(matrix, source, sample_count, search_bound)?;
        return Ok(Classification::InfiniteFamily(stream));
    }
    if violating_row(matrix).is_some() {
        let report = enumerate_constrained_solutions(matrix, k, source, search_bound)?;
        return Ok(Classification::Finite(report));
    }
    let scan = ap_constrained_scan(matrix, k, source, search_bound, false)?;
    if !scan.solutions.is_empty() {
        return Err(ConverseError::InvariantViolation(
            "degenerate matrix produced a not-all-equal solution".to_string(),
        ));
    }
    Ok(Classification::Degenerate(DegenerateCheck {
        k,
        search_bound,
        aps_examined: scan.aps_examined,
        solutions_found: 0,
    }))
}
