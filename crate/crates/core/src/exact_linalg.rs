//! Exact linear algebra over the integers.
//!
//! The two workhorses are fraction-free elimination in the style of Bareiss
//! for ranks, and an integer Gauss-Jordan reduction (every row kept at gcd 1
//! with positive leading entry) for nullspace bases. Nothing here ever
//! rounds: with `BigInt` scalars all results are exact at any magnitude,
//! and with machine-word scalars they are exact as long as the intermediate
//! minors fit.
//!
//! A matrix is called *null-diagonal* when its nullspace contains the
//! all-ones vector and has dimension at least two. That is precisely the
//! shape the solver needs: a line of constant vectors to translate along,
//! plus at least one independent direction to spread coordinates apart.

// Elimination kernels read one row while writing another; indexed loops are
// the honest way to spell that.
#![allow(clippy::needless_range_loop)]

use std::fmt;

use num_rational::Ratio;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::num::{int, Int};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LinalgError {
    #[error("matrix must have at least one row and one column")]
    EmptyMatrix,
    #[error("row {row} has {found} entries, expected {expected}")]
    RaggedRows { row: usize, expected: usize, found: usize },
    #[error("vector length {found} does not match dimension {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix is not null-diagonal")]
    NotNullDiagonal,
    #[error("basis vectors are not linearly independent")]
    DependentVectors,
    #[error("a basis needs at least one vector")]
    EmptyBasis,
    #[error("ones-first basis must start with the all-ones vector")]
    MissingOnesVector,
    #[error("vector {index} is not annihilated by the matrix")]
    NotInNullspace { index: usize },
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MatrixParseError {
    #[error("line {line}: expected header `m n`, got `{text}`")]
    BadHeader { line: usize, text: String },
    #[error("missing header line `m n`")]
    MissingHeader,
    #[error("header declares {expected} rows, found only {found}")]
    MissingRows { expected: usize, found: usize },
    #[error("line {line}: expected {expected} entries, found {found}")]
    WrongEntryCount { line: usize, expected: usize, found: usize },
    #[error("line {line}: `{token}` is not an integer")]
    BadEntry { line: usize, token: String },
    #[error("line {line}: unexpected content after the last row")]
    TrailingContent { line: usize },
    #[error("matrix dimensions must be at least 1x1")]
    ZeroDimension,
}

/// Dense integer matrix with at least one row and one column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix<T> {
    rows: Vec<Vec<T>>,
}

impl<T: Int> Matrix<T> {
    /// Build a matrix from row vectors. All rows must share one nonzero length.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self, LinalgError> {
        if rows.is_empty() || rows[0].is_empty() {
            return Err(LinalgError::EmptyMatrix);
        }
        let width = rows[0].len();
        for (i, row) in rows.iter().enumerate() {
            if row.len() != width {
                return Err(LinalgError::RaggedRows { row: i + 1, expected: width, found: row.len() });
            }
        }
        Ok(Matrix { rows })
    }

    /// Convenience constructor from machine-word literals, mostly for tests
    /// and inline command-line matrices.
    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Result<Self, LinalgError> {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&e| int(e)).collect()).collect())
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.rows[0].len()
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.rows[i]
    }

    pub fn rows_iter(&self) -> impl Iterator<Item = &[T]> {
        self.rows.iter().map(|r| r.as_slice())
    }

    /// Matrix-vector product.
    ///
    /// # Panics
    ///
    /// Panics if `x` does not have `ncols` entries.
    pub fn mul_vec(&self, x: &[T]) -> Vec<T> {
        assert_eq!(x.len(), self.ncols(), "vector length must match column count");
        self.rows
            .iter()
            .map(|row| {
                let mut acc = T::zero();
                for (a, v) in row.iter().zip(x) {
                    acc += a.clone() * v.clone();
                }
                acc
            })
            .collect()
    }

    /// Whether `x` is annihilated, i.e. every row dots to zero against it.
    pub fn annihilates(&self, x: &[T]) -> bool {
        x.len() == self.ncols() && self.mul_vec(x).iter().all(Zero::is_zero)
    }

    /// The sum of each row's entries.
    pub fn row_sums(&self) -> Vec<T> {
        self.rows
            .iter()
            .map(|row| {
                let mut acc = T::zero();
                for a in row {
                    acc += a.clone();
                }
                acc
            })
            .collect()
    }

    /// Whether the all-ones vector lies in the nullspace, which is the same
    /// as every row sum vanishing.
    pub fn contains_ones_vector(&self) -> bool {
        self.row_sums().iter().all(Zero::is_zero)
    }

    /// Rank by fraction-free elimination. Exact for any scalar whose values
    /// can hold the intermediate minors; always exact for `BigInt`.
    pub fn rank(&self) -> usize {
        bareiss_rank(self.rows.clone())
    }

    /// Dimension of the right nullspace, by rank-nullity.
    pub fn nullspace_dimension(&self) -> usize {
        self.ncols() - self.rank()
    }

    /// Null-diagonal test: the ones vector is annihilated and the nullspace
    /// has dimension at least two.
    pub fn is_null_diagonal(&self) -> bool {
        self.contains_ones_vector() && self.nullspace_dimension() >= 2
    }

    /// Integer basis of the right nullspace.
    ///
    /// Every basis vector is primitive (entries share no factor) with its
    /// first nonzero entry positive, and the vectors are ordered by the free
    /// column they came from, so identical inputs always produce identical
    /// bases. With `ones_first` the all-ones vector is exchanged into the
    /// front, which requires the matrix to be null-diagonal.
    ///
    /// # Algorithm
    ///
    /// Integer Gauss-Jordan reduction with per-row gcd division gives a
    /// fraction-free reduced echelon form; each free column then yields one
    /// basis vector by clearing denominators against the pivot entries. For
    /// `ones_first`, the coordinates of the ones vector in that basis are
    /// solved exactly over rationals and the ones vector is swapped against
    /// the least-index basis vector carrying a nonzero coordinate, which
    /// keeps the result a basis.
    pub fn nullspace_basis(&self, ones_first: bool) -> Result<NullspaceBasis<T>, LinalgError> {
        let vectors = nullspace_vectors(&self.rows);
        if !ones_first {
            return Ok(NullspaceBasis { ambient: self.ncols(), vectors, ones_first: false });
        }
        if !self.is_null_diagonal() {
            return Err(LinalgError::NotNullDiagonal);
        }
        let coords = ones_coordinates(&vectors).ok_or(LinalgError::NotNullDiagonal)?;
        let swap = coords
            .iter()
            .position(|c| !c.is_zero())
            .expect("ones vector is nonzero, some coordinate must be nonzero");
        let mut out = Vec::with_capacity(vectors.len());
        out.push(vec![T::one(); self.ncols()]);
        for (i, v) in vectors.into_iter().enumerate() {
            if i != swap {
                out.push(v);
            }
        }
        Ok(NullspaceBasis { ambient: self.ncols(), vectors: out, ones_first: true })
    }

    /// Parse the plain text format: a header line `m n`, then `m` rows of
    /// `n` whitespace-separated integers. Lines starting with `#` and blank
    /// lines are ignored. Entries may have arbitrary magnitude.
    pub fn parse_text(input: &str) -> Result<Self, MatrixParseError> {
        let mut lines = input
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

        let (header_line, header) = lines.next().ok_or(MatrixParseError::MissingHeader)?;
        let dims: Vec<&str> = header.split_whitespace().collect();
        let bad_header = || MatrixParseError::BadHeader { line: header_line, text: header.to_string() };
        if dims.len() != 2 {
            return Err(bad_header());
        }
        let m: usize = dims[0].parse().map_err(|_| bad_header())?;
        let n: usize = dims[1].parse().map_err(|_| bad_header())?;
        if m == 0 || n == 0 {
            return Err(MatrixParseError::ZeroDimension);
        }

        let mut rows = Vec::with_capacity(m);
        for (line, text) in &mut lines {
            let tokens: Vec<&str> = text.split_whitespace().collect();
            if tokens.len() != n {
                return Err(MatrixParseError::WrongEntryCount { line, expected: n, found: tokens.len() });
            }
            let mut row = Vec::with_capacity(n);
            for token in tokens {
                let value = T::from_str(token)
                    .map_err(|_| MatrixParseError::BadEntry { line, token: token.to_string() })?;
                row.push(value);
            }
            rows.push(row);
            if rows.len() == m {
                break;
            }
        }
        if rows.len() < m {
            return Err(MatrixParseError::MissingRows { expected: m, found: rows.len() });
        }
        if let Some((line, _)) = lines.next() {
            return Err(MatrixParseError::TrailingContent { line });
        }
        Ok(Matrix { rows })
    }

    /// Render in the same text format `parse_text` reads; the round trip is
    /// lossless.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.nrows(), self.ncols());
        for row in &self.rows {
            let words: Vec<String> = row.iter().map(|e| e.to_string()).collect();
            out.push_str(&words.join(" "));
            out.push('\n');
        }
        out
    }
}

impl<T: Int> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Ordered list of independent integer vectors annihilated by some matrix.
///
/// `ones_first` records the promise that the first vector is all ones; the
/// solver relies on it. A basis may span the whole nullspace (as returned by
/// [`Matrix::nullspace_basis`]) or just the sub-space a caller wants to work
/// in, so spanning is the caller's contract, not this type's.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NullspaceBasis<T> {
    ambient: usize,
    vectors: Vec<Vec<T>>,
    ones_first: bool,
}

impl<T: Int> NullspaceBasis<T> {
    /// Build a basis from explicit vectors, checking shape, independence,
    /// and (when claimed) the leading ones vector.
    pub fn from_vectors(vectors: Vec<Vec<T>>, ones_first: bool) -> Result<Self, LinalgError> {
        if vectors.is_empty() || vectors[0].is_empty() {
            return Err(LinalgError::EmptyBasis);
        }
        let ambient = vectors[0].len();
        for v in &vectors {
            if v.len() != ambient {
                return Err(LinalgError::DimensionMismatch { expected: ambient, found: v.len() });
            }
        }
        if bareiss_rank(vectors.clone()) != vectors.len() {
            return Err(LinalgError::DependentVectors);
        }
        if ones_first && !vectors[0].iter().all(One::is_one) {
            return Err(LinalgError::MissingOnesVector);
        }
        Ok(NullspaceBasis { ambient, vectors, ones_first })
    }

    pub(crate) fn from_parts(ambient: usize, vectors: Vec<Vec<T>>, ones_first: bool) -> Self {
        NullspaceBasis { ambient, vectors, ones_first }
    }

    /// Number of basis vectors.
    pub fn dimension(&self) -> usize {
        self.vectors.len()
    }

    /// Length of each vector.
    pub fn ambient_dimension(&self) -> usize {
        self.ambient
    }

    pub fn vectors(&self) -> &[Vec<T>] {
        &self.vectors
    }

    pub fn is_ones_first(&self) -> bool {
        self.ones_first
    }

    /// Largest absolute value over all entries of all vectors.
    pub fn max_abs_entry(&self) -> T {
        let mut best = T::zero();
        for v in &self.vectors {
            for e in v {
                let a = e.abs();
                if a > best {
                    best = a;
                }
            }
        }
        best
    }

    /// Check that every vector really is annihilated by `matrix`.
    pub fn validate_for(&self, matrix: &Matrix<T>) -> Result<(), LinalgError> {
        if matrix.ncols() != self.ambient {
            return Err(LinalgError::DimensionMismatch {
                expected: matrix.ncols(),
                found: self.ambient,
            });
        }
        for (i, v) in self.vectors.iter().enumerate() {
            if !matrix.annihilates(v) {
                return Err(LinalgError::NotInNullspace { index: i });
            }
        }
        Ok(())
    }
}

/// Rank by Bareiss-style fraction-free elimination with column pivoting.
/// Each two-by-two cross update divides exactly by the previous pivot.
pub(crate) fn bareiss_rank<T: Int>(mut a: Vec<Vec<T>>) -> usize {
    let m = a.len();
    if m == 0 {
        return 0;
    }
    let n = a[0].len();
    let mut prev = T::one();
    let mut rank = 0;
    for col in 0..n {
        if rank == m {
            break;
        }
        let Some(p) = (rank..m).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        let pivot = a[rank][col].clone();
        for r in rank + 1..m {
            let lead = a[r][col].clone();
            for c in col + 1..n {
                let num = pivot.clone() * a[r][c].clone() - lead.clone() * a[rank][c].clone();
                let (q, rem) = num.div_rem(&prev);
                debug_assert!(rem.is_zero(), "fraction-free update must divide exactly");
                a[r][c] = q;
            }
            a[r][col] = T::zero();
        }
        prev = pivot;
        rank += 1;
    }
    rank
}

/// Divide a row by the gcd of its entries and flip signs so the first
/// nonzero entry is positive. The zero row is left alone.
fn normalize_primitive<T: Int>(v: &mut [T]) {
    let mut g = T::zero();
    for e in v.iter() {
        g = g.gcd(e);
    }
    if g.is_zero() {
        return;
    }
    if v.iter().find(|e| !e.is_zero()).map(|e| e.is_negative()).unwrap_or(false) {
        g = -g;
    }
    for e in v.iter_mut() {
        *e = e.clone() / g.clone();
    }
}

/// Primitive integer basis of the right nullspace of `rows`, one vector per
/// free column of the reduced echelon form, ordered by free column index.
fn nullspace_vectors<T: Int>(rows: &[Vec<T>]) -> Vec<Vec<T>> {
    let m = rows.len();
    let n = rows[0].len();
    let mut a: Vec<Vec<T>> = rows.to_vec();
    for row in &mut a {
        normalize_primitive(row);
    }

    // Integer Gauss-Jordan: cross-multiply rows so no fractions appear, and
    // keep every row primitive so entries stay small.
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut next = 0;
    for col in 0..n {
        if next == m {
            break;
        }
        let Some(p) = (next..m).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(next, p);
        normalize_primitive(&mut a[next]);
        let pivot = a[next][col].clone();
        for r in 0..m {
            if r == next || a[r][col].is_zero() {
                continue;
            }
            let lead = a[r][col].clone();
            for c in 0..n {
                a[r][c] = pivot.clone() * a[r][c].clone() - lead.clone() * a[next][c].clone();
            }
            normalize_primitive(&mut a[r]);
        }
        pivots.push((next, col));
        next += 1;
    }

    let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
    let mut lcm = T::one();
    for &(r, c) in &pivots {
        lcm = lcm.lcm(&a[r][c]);
    }

    let mut basis = Vec::with_capacity(n - pivots.len());
    for free in 0..n {
        if pivot_cols.contains(&free) {
            continue;
        }
        let mut v = vec![T::zero(); n];
        v[free] = lcm.clone();
        for &(r, c) in &pivots {
            let scale = lcm.clone() / a[r][c].clone();
            v[c] = -(a[r][free].clone() * scale);
        }
        normalize_primitive(&mut v);
        basis.push(v);
    }
    basis
}

/// Coordinates of the all-ones vector in the span of `vectors`, solved
/// exactly over rationals; `None` when ones is outside the span.
fn ones_coordinates<T: Int>(vectors: &[Vec<T>]) -> Option<Vec<Ratio<T>>> {
    if vectors.is_empty() {
        return None;
    }
    let n = vectors[0].len();
    let d = vectors.len();
    let mut a: Vec<Vec<Ratio<T>>> = (0..n)
        .map(|r| {
            let mut row: Vec<Ratio<T>> =
                (0..d).map(|c| Ratio::from_integer(vectors[c][r].clone())).collect();
            row.push(Ratio::from_integer(T::one()));
            row
        })
        .collect();

    let mut pivot_row_of = vec![usize::MAX; d];
    let mut rank = 0;
    for col in 0..d {
        let Some(p) = (rank..n).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        let inv = a[rank][col].clone();
        for c in 0..=d {
            a[rank][c] = a[rank][c].clone() / inv.clone();
        }
        for r in 0..n {
            if r != rank && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in 0..=d {
                    let sub = f.clone() * a[rank][c].clone();
                    a[r][c] = a[r][c].clone() - sub;
                }
            }
        }
        pivot_row_of[col] = rank;
        rank += 1;
    }
    if rank < d {
        return None;
    }
    for r in rank..n {
        if !a[r][d].is_zero() {
            return None;
        }
    }
    Some((0..d).map(|col| a[pivot_row_of[col]][d].clone()).collect())
}
