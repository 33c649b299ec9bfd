//! Exact search for arithmetic-progression-shaped solutions of homogeneous
//! integer linear systems.
//!
//! The crate revolves around one construction and its limits. For an
//! integer matrix whose nullspace contains the all-ones vector and has
//! dimension at least two (a *null-diagonal* matrix), solutions with all
//! coordinates inside a chosen set (primes, naturals, a file listing) can
//! be manufactured wholesale from arithmetic progressions found in the set;
//! see [`ap_solver`]. When some row sum is nonzero, the same solutions are
//! provably scarce, and [`converse_analysis`] enumerates the finite search
//! space exactly. [`equivalence_demos`] rounds the picture off: membership
//! of long progressions in a set and solvability of these systems are two
//! views of the same phenomenon.
//!
//! Everything is generic over the [`Int`] scalar; the aliases below pin the
//! arbitrary-precision instantiation used by the command-line tools.

pub mod ap_solver;
pub mod converse_analysis;
pub mod equivalence_demos;
pub mod exact_linalg;
pub mod num;
pub mod progressions;
pub mod set_sources;

pub use num::Int;

use num_bigint::BigInt;

/// Matrix with arbitrary-precision entries, the canonical instantiation.
pub type IntegerMatrix = exact_linalg::Matrix<BigInt>;
/// Nullspace basis over arbitrary-precision integers.
pub type IntegerBasis = exact_linalg::NullspaceBasis<BigInt>;
/// Arithmetic progression over arbitrary-precision integers.
pub type IntegerAp = progressions::Ap<BigInt>;
/// Generalized progression over arbitrary-precision integers.
pub type IntegerGap = progressions::Gap<BigInt>;
/// Solution record over arbitrary-precision integers.
pub type IntegerSolution = ap_solver::Solution<BigInt>;
