//! Progressions as solutions and back again.
//!
//! The second-difference system `x_i - 2*x_{i+1} + x_{i+2} = 0` (rows
//! `(1, -2, 1)` sliding along the diagonal) has nullspace exactly
//! `span{(1,...,1), (0,1,...,n-1)}`: its integer solutions are the
//! arithmetic progressions of length `n`, read off as coordinate vectors.
//! That makes "the set contains arbitrarily long progressions" and "every
//! null-diagonal system has a not-all-equal solution inside the set" two
//! faces of one statement, and this module makes the translation
//! executable in both directions: [`progression_matrix`] builds the
//! system, [`extract_ap`] decomposes a solution `x = m1 + m2*(0,1,...,n-1)`
//! back into a progression, and [`zero_solution_to_ap_demo`] walks a set's
//! progressions and certifies each round trip.
//!
//! [`erdos_turan_partial_sum`] computes `sum(1/a)` over a set's members up
//! to a bound, exactly. A classical conjecture of Erdős and Turán predicts
//! that divergence of this series already forces arbitrarily long
//! progressions; the partial sums demonstrate the hypothesis and prove
//! nothing, which is all a finite computation can do here.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

use crate::exact_linalg::{LinalgError, Matrix};
use crate::num::{int, Int};
use crate::progressions::{Ap, ProgressionError};
use crate::set_sources::{ApSearcher, SetSource, SourceError};

#[derive(Debug, Error)]
pub enum DemoError {
    #[error("progression matrix needs at least 3 columns, got {n}")]
    TooFewColumns { n: usize },
    #[error("progression extraction needs at least 3 coordinates, got {len}")]
    VectorTooShort { len: usize },
    #[error("not a progression solution: second difference nonzero at index {index}")]
    NotProgression { index: usize },
    #[error("constant vector")]
    ConstantVector,
    #[error("internal invariant violated: {0}")]
    InvariantViolation(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Progression(#[from] ProgressionError),
    #[error(transparent)]
    Source(#[from] SourceError),
}

/// The `(n-2) x n` second-difference matrix: row `i` has `1, -2, 1` at
/// columns `i, i+1, i+2`. Its nullspace is spanned by the all-ones vector
/// and the ramp `(0, 1, ..., n-1)`, so its solutions are exactly the
/// length-`n` arithmetic progressions (with integer base and step).
pub fn progression_matrix<T: Int>(n: usize) -> Result<Matrix<T>, DemoError> {
    if n < 3 {
        return Err(DemoError::TooFewColumns { n });
    }
    let rows: Vec<Vec<T>> = (0..n - 2)
        .map(|i| {
            let mut row = vec![T::zero(); n];
            row[i] = T::one();
            row[i + 1] = int(-2);
            row[i + 2] = T::one();
            row
        })
        .collect();
    let matrix = Matrix::from_rows(rows)?;
    debug_assert_eq!(matrix.rank(), n - 2);
    debug_assert!(matrix.annihilates(&vec![T::one(); n]));
    debug_assert!(matrix.annihilates(
        &(0..n).map(|j| int::<T>(j as i64)).collect::<Vec<_>>()
    ));
    Ok(matrix)
}

/// Decompose a second-difference solution as `x = m1*(1,...,1) +
/// m2*(0,1,...,n-1)` with `m1 = x[0]` and `m2 = x[1] - x[0]`, and return
/// the progression it spells out. A negative `m2` is normalized by
/// reversal (base becomes the last coordinate) so the step is positive.
pub fn extract_ap<T: Int>(x: &[T]) -> Result<Ap<T>, DemoError> {
    if x.len() < 3 {
        return Err(DemoError::VectorTooShort { len: x.len() });
    }
    for i in 0..x.len() - 2 {
        let second = x[i].clone() - x[i + 1].clone() - x[i + 1].clone() + x[i + 2].clone();
        if !second.is_zero() {
            return Err(DemoError::NotProgression { index: i });
        }
    }
    let step = x[1].clone() - x[0].clone();
    if step.is_zero() {
        return Err(DemoError::ConstantVector);
    }
    let n = x.len() as u64;
    if step.is_negative() {
        Ok(Ap::new(n, x[x.len() - 1].clone(), -step)?)
    } else {
        Ok(Ap::new(n, x[0].clone(), step)?)
    }
}

/// Walk the length-`n` progressions of `source` (bases and elements up to
/// `search_bound`) and certify, for up to `count` of them, the full round
/// trip: the coordinate vector solves the second-difference system, the
/// decomposition recovers the progression exactly, and every element is a
/// member of the source. Returns the certified progressions in search
/// order.
pub fn zero_solution_to_ap_demo<T: Int>(
    source: &dyn SetSource,
    n: u64,
    count: usize,
    search_bound: u64,
) -> Result<Vec<Ap<T>>, DemoError> {
    let matrix: Matrix<T> = progression_matrix(n as usize)?;
    let searcher = ApSearcher::new(source, n, search_bound)?;
    let mut out = Vec::new();
    for (a, d) in searcher.iter() {
        if out.len() == count {
            break;
        }
        let witness: Ap<T> = Ap::from_u64(n, a, d)?;
        let x = witness.elements();
        if !matrix.annihilates(&x) {
            return Err(DemoError::InvariantViolation(format!(
                "progression ({a}, {d}) does not solve the second-difference system"
            )));
        }
        // The decomposition coefficients must be integers and reconstruct
        // x exactly; with integer coordinates this is automatic, so check it.
        let m1 = x[0].clone();
        let m2 = x[1].clone() - x[0].clone();
        for (j, v) in x.iter().enumerate() {
            if *v != m1.clone() + m2.clone() * int::<T>(j as i64) {
                return Err(DemoError::InvariantViolation(format!(
                    "decomposition fails to reconstruct coordinate {j}"
                )));
            }
        }
        let recovered = extract_ap(&x)?;
        if recovered != witness {
            return Err(DemoError::InvariantViolation(format!(
                "extraction returned {recovered:?} for witness ({a}, {d})"
            )));
        }
        for lam in 0..n {
            if !source.contains(a + lam * d)? {
                return Err(DemoError::InvariantViolation(format!(
                    "element {} of progression ({a}, {d}) is not a member",
                    a + lam * d
                )));
            }
        }
        out.push(recovered);
    }
    Ok(out)
}

/// Exact partial sum of reciprocals of a set's members.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialSum {
    pub sum: BigRational,
    /// Members actually summed.
    pub terms: u64,
    /// Whether a member with value 0 was present and skipped.
    pub skipped_zero: bool,
}

impl PartialSum {
    /// Decimal rendering truncated to `digits` fractional digits, computed
    /// by exact long division.
    pub fn decimal(&self, digits: usize) -> String {
        let numer = self.sum.numer().clone();
        let denom = self.sum.denom().clone();
        let (whole, mut rem) = num_integer::Integer::div_rem(&numer, &denom);
        let mut rendered = whole.to_string();
        if digits > 0 {
            rendered.push('.');
            let ten = BigInt::from(10);
            for _ in 0..digits {
                rem *= &ten;
                let (digit, next) = num_integer::Integer::div_rem(&rem, &denom);
                rendered.push_str(&digit.to_string());
                rem = next;
            }
        }
        rendered
    }
}

/// `sum(1/a)` over the members `1 <= a <= bound` of `source`, as an exact
/// rational. Members equal to 0 are skipped and flagged.
pub fn erdos_turan_partial_sum(
    source: &dyn SetSource,
    bound: u64,
) -> Result<PartialSum, SourceError> {
    let mut sum = BigRational::zero();
    let mut terms = 0u64;
    let mut skipped_zero = false;
    for member in source.members_up_to(bound)? {
        if member == 0 {
            skipped_zero = true;
            continue;
        }
        sum += BigRational::new(BigInt::from(1), BigInt::from(member));
        terms += 1;
    }
    Ok(PartialSum { sum, terms, skipped_zero })
}
