//! Construction of solutions with coordinates inside a chosen set.
//!
//! The idea: for a null-diagonal matrix take a nullspace basis led by the
//! all-ones vector, say `ones, r_2, ..., r_d`, and look at combinations
//! `x = c*ones + b_1*r_2 + ... + b_{d-1}*r_d`. Every such `x` is a solution;
//! the game is picking `c` and the `b_i` so that all coordinates land in
//! the set. Writing `N` for one more than the largest absolute basis entry,
//! each coordinate of `x` differs from `c` by at most `(N-1)*(|b_1| + ... +
//! |b_{d-1}|)`, so if the coefficients trace out a box with volumes `2N-1`
//! carved out of one long progression in the set (mixed-radix steps, see
//! [`crate::progressions::embed_gap_in_ap`]), every coordinate is a
//! member: the coordinates read off positions inside the witness
//! progression. One witness progression of length `(2N-1)^(d-1)` therefore
//! yields a fully in-set solution, and distinct witnesses keep yielding
//! distinct solutions.
//!
//! [`solution_stream`] does not run the construction over the full basis:
//! required witness length is exponential in the basis dimension and grows
//! with its largest entry, and long progressions are scarce in interesting
//! sets. Instead it solves inside the two-dimensional sub-basis `{ones, r*}`
//! where `r*` is the entry-centered, sign-normalized reduction of whichever
//! basis vector stays smallest. That keeps witness requirements at their
//! minimum (often length 3) without giving up anything the stream promises:
//! solutions are verified members of the nullspace, coordinates in the set,
//! not all equal.

use std::collections::HashSet;

use thiserror::Error;

use crate::exact_linalg::{LinalgError, Matrix, NullspaceBasis};
use crate::num::{int, nat, Int};
use crate::progressions::{embed_gap_in_ap, Ap, ProgressionError};
use crate::set_sources::{ApSearcher, SetSource, SourceError};

#[derive(Debug, Error)]
pub enum SolverError {
    #[error("construction needs a basis with the ones vector first")]
    BasisNotOnesFirst,
    #[error("construction needs at least two basis vectors, got {dimension}")]
    DimensionTooSmall { dimension: usize },
    #[error("witness progression of length {actual} is shorter than the required {required}")]
    ApTooShort { required: u64, actual: u64 },
    #[error("plan does not fit in 64 bits; the basis is too large for this construction")]
    PlanTooLarge,
    #[error("averaging needs at least two values, got {n}")]
    AverageSizeTooSmall { n: usize },
    #[error("internal invariant violated: {0}")]
    InvariantViolation(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Progression(#[from] ProgressionError),
    #[error(transparent)]
    Source(#[from] SourceError),
}

/// What the construction will ask of a witness progression, derived from a
/// ones-first basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolverPlan {
    /// One more than the largest absolute basis entry, written `N` below.
    pub entry_bound: u64,
    /// Number of free coefficients, one less than the basis dimension.
    pub gap_dimension: usize,
    /// Box volume per coefficient, `2N - 1`, so coefficients can range over
    /// `-(N-1) ..= N-1` once centered.
    pub volume_each: u64,
    /// Witness length `(2N-1)^(gap_dimension)` the box consumes.
    pub required_ap_length: u64,
}

/// Compute the plan for a ones-first basis.
pub fn plan<T: Int>(basis: &NullspaceBasis<T>) -> Result<SolverPlan, SolverError> {
    if !basis.is_ones_first() {
        return Err(SolverError::BasisNotOnesFirst);
    }
    let dimension = basis.dimension();
    if dimension < 2 {
        return Err(SolverError::DimensionTooSmall { dimension });
    }
    let entry_bound =
        (basis.max_abs_entry() + T::one()).to_u64().ok_or(SolverError::PlanTooLarge)?;
    let volume_each = 2 * entry_bound - 1;
    let gap_dimension = dimension - 1;
    let mut required: u128 = 1;
    for _ in 0..gap_dimension {
        required *= volume_each as u128;
        if required > u64::MAX as u128 {
            return Err(SolverError::PlanTooLarge);
        }
    }
    Ok(SolverPlan {
        entry_bound,
        gap_dimension,
        volume_each,
        required_ap_length: required as u64,
    })
}

/// One constructed solution together with the data that produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution<T> {
    /// The solution vector; every coordinate is an element of `witness`.
    pub x: Vec<T>,
    /// The progression the coordinates were read from.
    pub witness: Ap<T>,
    /// Centered box middle: the coefficient of the ones vector.
    pub center: T,
    /// Mixed-radix box steps: coefficients of the remaining basis vectors.
    pub gap_steps: Vec<T>,
}

/// Run the box construction for one witness progression.
///
/// The witness must be at least as long as the basis plan requires. The
/// returned solution satisfies, by construction and re-checked here: every
/// coordinate lies in the witness, and not all coordinates are equal.
pub fn construct_solution<T: Int>(
    basis: &NullspaceBasis<T>,
    witness: &Ap<T>,
) -> Result<Solution<T>, SolverError> {
    let plan = plan(basis)?;
    if witness.len() < plan.required_ap_length {
        return Err(SolverError::ApTooShort {
            required: plan.required_ap_length,
            actual: witness.len(),
        });
    }
    let volumes = vec![plan.volume_each; plan.gap_dimension];
    let gap = embed_gap_in_ap(witness, plan.gap_dimension, &volumes)?;
    let centered = gap.to_centered()?;

    let n = basis.ambient_dimension();
    let mut x = vec![centered.center().clone(); n];
    for (step, vector) in centered.steps().iter().zip(&basis.vectors()[1..]) {
        for (xi, vi) in x.iter_mut().zip(vector) {
            *xi += step.clone() * vi.clone();
        }
    }

    for xi in &x {
        if !witness.contains(xi) {
            return Err(SolverError::InvariantViolation(format!(
                "coordinate {xi} fell outside the witness progression"
            )));
        }
    }
    if x.iter().all(|xi| *xi == x[0]) {
        return Err(SolverError::InvariantViolation(
            "constructed solution is a constant vector".to_string(),
        ));
    }

    Ok(Solution {
        x,
        witness: witness.clone(),
        center: centered.center().clone(),
        gap_steps: centered.steps().to_vec(),
    })
}

/// Full check that `solution` is what it claims: annihilated by `matrix`,
/// coordinates inside the witness progression, not all equal.
pub fn verify_solution<T: Int>(matrix: &Matrix<T>, solution: &Solution<T>) -> bool {
    if solution.x.len() != matrix.ncols() {
        return false;
    }
    if !matrix.annihilates(&solution.x) {
        return false;
    }
    if !solution.x.iter().all(|xi| solution.witness.contains(xi)) {
        return false;
    }
    solution.x.iter().any(|xi| *xi != solution.x[0])
}

/// Entry-center and primitively normalize `v`: subtract the floor midpoint
/// of its extremes times the ones vector, divide out the gcd, make the first
/// nonzero entry positive. The result spans the same space together with
/// ones and has the smallest max-norm achievable by such shifts.
fn center_against_ones<T: Int>(v: &[T]) -> Vec<T> {
    let hi = v.iter().max().expect("vector is nonempty").clone();
    let lo = v.iter().min().expect("vector is nonempty").clone();
    let mid = (hi + lo).div_floor(&int(2));
    let mut w: Vec<T> = v.iter().map(|e| e.clone() - mid.clone()).collect();

    let mut g = T::zero();
    for e in &w {
        g = g.gcd(e);
    }
    if !g.is_zero() {
        if w.iter().find(|e| !e.is_zero()).map(|e| e.is_negative()).unwrap_or(false) {
            g = -g;
        }
        for e in &mut w {
            *e = e.clone() / g.clone();
        }
    }
    w
}

/// Pick the cheapest two-dimensional solving basis `{ones, r*}` out of a
/// ones-first basis: each non-ones vector is centered against ones and the
/// one with the smallest largest entry wins, earliest index on ties.
pub fn reduce_to_solving_basis<T: Int>(
    basis: &NullspaceBasis<T>,
) -> Result<NullspaceBasis<T>, SolverError> {
    if !basis.is_ones_first() {
        return Err(SolverError::BasisNotOnesFirst);
    }
    if basis.dimension() < 2 {
        return Err(SolverError::DimensionTooSmall { dimension: basis.dimension() });
    }
    let mut best: Option<(T, Vec<T>)> = None;
    for v in &basis.vectors()[1..] {
        let w = center_against_ones(v);
        let max = w.iter().map(|e| e.abs()).max().expect("vector is nonempty");
        let better = match &best {
            None => true,
            Some((best_max, _)) => max < *best_max,
        };
        if better {
            best = Some((max, w));
        }
    }
    let (_, star) = best.expect("basis has at least one non-ones vector");
    let ones = vec![T::one(); basis.ambient_dimension()];
    Ok(NullspaceBasis::from_parts(basis.ambient_dimension(), vec![ones, star], true))
}

/// Solutions streamed off successive witness progressions.
#[derive(Debug)]
pub struct StreamOutcome<T> {
    /// Distinct verified solutions, in witness order.
    pub solutions: Vec<Solution<T>>,
    /// True when the search bound ran out of witnesses before `count`.
    pub exhausted: bool,
    /// The plan the solving basis imposed on witnesses.
    pub plan: SolverPlan,
    /// Dimension of the full nullspace of the matrix.
    pub nullspace_dimension: usize,
    /// The two-dimensional basis the solutions were built in.
    pub solving_basis: NullspaceBasis<T>,
}

/// Stream up to `count` distinct solutions of `matrix` with coordinates in
/// `source`, using witness progressions found below `search_bound`.
///
/// Witnesses are visited in lexicographic `(base, step)` order, so the
/// stream is deterministic; solutions whose vector repeats an earlier one
/// under a different witness are skipped. Every returned solution passes
/// [`verify_solution`].
pub fn solution_stream<T: Int>(
    matrix: &Matrix<T>,
    source: &dyn SetSource,
    count: usize,
    search_bound: u64,
) -> Result<StreamOutcome<T>, SolverError> {
    let full = matrix.nullspace_basis(true)?;
    let solving = reduce_to_solving_basis(&full)?;
    let plan = plan(&solving)?;

    let searcher = ApSearcher::new(source, plan.required_ap_length, search_bound)?;
    let mut solutions: Vec<Solution<T>> = Vec::new();
    let mut seen: HashSet<Vec<T>> = HashSet::new();
    let mut exhausted = false;
    let mut cursor = None;
    while solutions.len() < count {
        let Some((a, d)) = searcher.next_after(cursor) else {
            exhausted = true;
            break;
        };
        cursor = Some((a, d));
        let base = nat::<T>(a).ok_or(SourceError::ScalarOverflow)?;
        let step = nat::<T>(d).ok_or(SourceError::ScalarOverflow)?;
        let witness = Ap::new(plan.required_ap_length, base, step)?;
        let solution = construct_solution(&solving, &witness)?;
        if !verify_solution(matrix, &solution) {
            return Err(SolverError::InvariantViolation(format!(
                "solution from witness ({a}, {d}) failed verification"
            )));
        }
        if seen.insert(solution.x.clone()) {
            solutions.push(solution);
        }
    }
    Ok(StreamOutcome {
        solutions,
        exhausted,
        plan,
        nullspace_dimension: full.dimension(),
        solving_basis: solving,
    })
}

/// A tuple whose average lies in the set alongside all its entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AverageTuple<T> {
    /// The `n` averaged values, not all equal, all in the set.
    pub tuple: Vec<T>,
    /// Their exact average, also in the set.
    pub average: T,
    /// The progression the values were read from.
    pub witness: Ap<T>,
}

/// Outcome of an average-tuple search.
#[derive(Debug)]
pub struct AverageOutcome<T> {
    pub tuples: Vec<AverageTuple<T>>,
    pub exhausted: bool,
}

/// Find up to `count` tuples of `n` not-all-equal members of `source` whose
/// average is again a member, by solving `x_1 + ... + x_n - n*x_{n+1} = 0`.
pub fn average_tuples<T: Int>(
    source: &dyn SetSource,
    n: usize,
    count: usize,
    search_bound: u64,
) -> Result<AverageOutcome<T>, SolverError> {
    if n < 2 {
        return Err(SolverError::AverageSizeTooSmall { n });
    }
    let mut row: Vec<T> = vec![T::one(); n];
    row.push(int(-(n as i64)));
    let matrix = Matrix::from_rows(vec![row])?;
    let stream = solution_stream(&matrix, source, count, search_bound)?;

    let mut tuples = Vec::with_capacity(stream.solutions.len());
    for solution in stream.solutions {
        let tuple = solution.x[..n].to_vec();
        let average = solution.x[n].clone();
        if tuple.iter().all(|v| *v == tuple[0]) {
            return Err(SolverError::InvariantViolation(
                "average tuple collapsed to a constant".to_string(),
            ));
        }
        tuples.push(AverageTuple { tuple, average, witness: solution.witness });
    }
    Ok(AverageOutcome { tuples, exhausted: stream.exhausted })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::set_sources::{FileSource, PrimeSource, StridedSource};

    fn ones_first(rows: &[Vec<i64>]) -> NullspaceBasis<i64> {
        Matrix::from_i64_rows(rows).unwrap().nullspace_basis(true).unwrap()
    }

    #[test]
    fn plan_examples() {
        let basis =
            NullspaceBasis::from_vectors(vec![vec![1i64, 1, 1], vec![1, -1, 0]], true).unwrap();
        let p = plan(&basis).unwrap();
        assert_eq!(
            (p.entry_bound, p.gap_dimension, p.volume_each, p.required_ap_length),
            (2, 1, 3, 3)
        );

        let basis =
            NullspaceBasis::from_vectors(vec![vec![1i64, 1, 1, 1], vec![0, 1, 2, 3]], true)
                .unwrap();
        let p = plan(&basis).unwrap();
        assert_eq!((p.entry_bound, p.volume_each, p.required_ap_length), (4, 7, 7));

        let basis = NullspaceBasis::from_vectors(
            vec![vec![1i64, 1, 1], vec![0, 1, 0], vec![0, 0, 1]],
            true,
        )
        .unwrap();
        let p = plan(&basis).unwrap();
        assert_eq!((p.entry_bound, p.gap_dimension, p.required_ap_length), (2, 2, 9));
    }

    #[test]
    fn plan_rejects_thin_or_unordered_bases() {
        let not_ones =
            NullspaceBasis::from_vectors(vec![vec![1i64, -1, 0], vec![2, 0, 1]], false).unwrap();
        assert!(matches!(plan(&not_ones), Err(SolverError::BasisNotOnesFirst)));
        let thin = NullspaceBasis::from_vectors(vec![vec![1i64, 1]], true).unwrap();
        assert!(matches!(plan(&thin), Err(SolverError::DimensionTooSmall { dimension: 1 })));
    }

    #[test]
    fn construction_reproduces_the_first_prime_solution() {
        let basis = ones_first(&[vec![1, 1, -2]]);
        let solving = reduce_to_solving_basis(&basis).unwrap();
        assert_eq!(solving.vectors()[1], vec![1, -1, 0]);
        let witness = Ap::new(3, 3i64, 2).unwrap();
        let solution = construct_solution(&solving, &witness).unwrap();
        assert_eq!(solution.x, vec![7, 3, 5]);
        assert_eq!(solution.center, 5);
        assert_eq!(solution.gap_steps, vec![2]);
    }

    #[test]
    fn construction_rejects_short_witnesses() {
        let basis = ones_first(&[vec![1, 1, -2]]);
        let solving = reduce_to_solving_basis(&basis).unwrap();
        let witness = Ap::new(2, 3i64, 2).unwrap();
        assert!(matches!(
            construct_solution(&solving, &witness),
            Err(SolverError::ApTooShort { required: 3, actual: 2 })
        ));
    }

    #[test]
    fn construction_with_three_basis_vectors() {
        // Zero matrix: everything is a solution, so the full construction
        // runs with a two-dimensional box.
        let matrix = Matrix::from_i64_rows(&[vec![0, 0, 0]]).unwrap();
        let basis = matrix.nullspace_basis(true).unwrap();
        assert_eq!(basis.dimension(), 3);
        let p = plan(&basis).unwrap();
        assert_eq!(p.required_ap_length, 9);
        let witness = Ap::new(9, 0i64, 1).unwrap();
        let solution = construct_solution(&basis, &witness).unwrap();
        assert!(verify_solution(&matrix, &solution));
        for xi in &solution.x {
            assert!(witness.contains(xi));
        }
    }

    #[test]
    fn verification_rejects_wrong_claims() {
        let matrix: Matrix<i64> = Matrix::from_i64_rows(&[vec![1, 1, -2]]).unwrap();
        let witness = Ap::new(3, 3i64, 2).unwrap();
        let good = Solution {
            x: vec![7, 3, 5],
            witness: witness.clone(),
            center: 5,
            gap_steps: vec![2],
        };
        assert!(verify_solution(&matrix, &good));

        let not_annihilated = Solution { x: vec![7, 3, 4], ..good.clone() };
        assert!(!verify_solution(&matrix, &not_annihilated));

        let outside_witness = Solution { x: vec![8, 2, 5], ..good.clone() };
        assert!(!verify_solution(&matrix, &outside_witness));

        let constant = Solution {
            x: vec![5, 5, 5],
            witness: Ap::new(3, 5i64, 1).unwrap(),
            center: 5,
            gap_steps: vec![0],
        };
        assert!(!verify_solution(&matrix, &constant));
    }

    #[test]
    fn centering_picks_small_vectors() {
        assert_eq!(center_against_ones(&[2i64, 0, 1]), vec![1, -1, 0]);
        assert_eq!(center_against_ones(&[4i64, 0]), vec![1, -1]);
        assert_eq!(center_against_ones(&[0i64, 1, 2, 3]), vec![1, 0, -1, -2]);
        assert_eq!(center_against_ones(&[1i64, -1, 0]), vec![1, -1, 0]);
    }

    #[test]
    fn solving_basis_for_the_average_row() {
        let basis = ones_first(&[vec![1, 1, 1, -3]]);
        let solving = reduce_to_solving_basis(&basis).unwrap();
        assert_eq!(solving.vectors()[1], vec![1, 0, -1, 0]);
        assert_eq!(plan(&solving).unwrap().required_ap_length, 3);
    }

    #[test]
    fn stream_over_primes_starts_at_the_least_witness() {
        let primes = PrimeSource::with_bound(500).unwrap();
        let matrix: Matrix<i64> = Matrix::from_i64_rows(&[vec![1, 1, -2]]).unwrap();
        let outcome = solution_stream(&matrix, &primes, 5, 500).unwrap();
        assert_eq!(outcome.solutions.len(), 5);
        assert!(!outcome.exhausted);
        assert_eq!(outcome.solutions[0].x, vec![7, 3, 5]);
        assert_eq!(outcome.nullspace_dimension, 2);
        assert_eq!(outcome.plan.required_ap_length, 3);
        for s in &outcome.solutions {
            assert!(verify_solution(&matrix, s));
        }
    }

    #[test]
    fn stream_over_multiples_of_five() {
        let fives = StridedSource::multiples(5).unwrap();
        let matrix: Matrix<i64> = Matrix::from_i64_rows(&[vec![1, 1, -2]]).unwrap();
        let outcome = solution_stream(&matrix, &fives, 3, 1000).unwrap();
        assert_eq!(outcome.solutions.len(), 3);
        for s in &outcome.solutions {
            for xi in &s.x {
                assert_eq!(xi % 5, 0);
            }
        }
    }

    #[test]
    fn stream_rejects_non_null_diagonal_matrices() {
        let primes = PrimeSource::with_bound(100).unwrap();
        let matrix: Matrix<i64> = Matrix::from_i64_rows(&[vec![1, -1]]).unwrap();
        assert!(matches!(
            solution_stream(&matrix, &primes, 1, 100),
            Err(SolverError::Linalg(LinalgError::NotNullDiagonal))
        ));
    }

    #[test]
    fn stream_reports_exhaustion() {
        let tiny = FileSource::from_members("t", vec![1, 3, 5]).unwrap();
        let matrix: Matrix<i64> = Matrix::from_i64_rows(&[vec![1, 1, -2]]).unwrap();
        let outcome = solution_stream(&matrix, &tiny, 10, 5).unwrap();
        assert!(outcome.exhausted);
        assert_eq!(outcome.solutions.len(), 1);
        assert_eq!(outcome.solutions[0].x, vec![5, 1, 3]);
    }

    #[test]
    fn stream_deduplicates_solution_vectors() {
        let nats = StridedSource::naturals();
        let matrix: Matrix<i64> = Matrix::from_i64_rows(&[vec![1, 1, -2]]).unwrap();
        let outcome = solution_stream(&matrix, &nats, 50, 60).unwrap();
        let mut seen = HashSet::new();
        for s in &outcome.solutions {
            assert!(seen.insert(s.x.clone()), "duplicate {:?}", s.x);
        }
    }

    #[test]
    fn average_pairs_over_primes() {
        let primes = PrimeSource::with_bound(1000).unwrap();
        let outcome = average_tuples::<i64>(&primes, 2, 5, 1000).unwrap();
        assert_eq!(outcome.tuples.len(), 5);
        let first = &outcome.tuples[0];
        assert_eq!(first.tuple, vec![7, 3]);
        assert_eq!(first.average, 5);
        for t in &outcome.tuples {
            assert_eq!(t.tuple[0] + t.tuple[1], 2 * t.average);
            assert!(t.tuple[0] != t.tuple[1]);
        }
    }

    #[test]
    fn average_triples_over_primes() {
        let primes = PrimeSource::with_bound(1000).unwrap();
        let outcome = average_tuples::<i64>(&primes, 3, 4, 1000).unwrap();
        assert_eq!(outcome.tuples.len(), 4);
        for t in &outcome.tuples {
            let sum: i64 = t.tuple.iter().sum();
            assert_eq!(sum, 3 * t.average);
            assert!(t.tuple.iter().any(|&v| v != t.tuple[0]));
        }
    }

    #[test]
    fn average_of_one_is_rejected() {
        let primes = PrimeSource::with_bound(100).unwrap();
        assert!(matches!(
            average_tuples::<i64>(&primes, 1, 1, 100),
            Err(SolverError::AverageSizeTooSmall { n: 1 })
        ));
    }
}
