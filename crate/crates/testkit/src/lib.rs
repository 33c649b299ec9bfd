//! Independent oracles used by the test suites.
//!
//! Everything in this crate is written against the *definitions* rather than
//! against the production code: rank comes from plain Gaussian elimination
//! over rationals, primality from trial division, progression searches from
//! unpruned double loops. The implementations are deliberately naive so that
//! an agreement failure points at the production crate, not at the oracle.

// Elimination reads one row while writing another; indexed loops are the
// honest way to spell that.
#![allow(clippy::needless_range_loop)]

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub mod schema;

/// Rank of an integer matrix by textbook Gaussian elimination over `BigRational`.
pub fn rational_rank(rows: &[Vec<BigInt>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let ncols = rows[0].len();
    let mut a: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|r| r.iter().map(|e| BigRational::from_integer(e.clone())).collect())
        .collect();
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot) = (rank..a.len()).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(rank, pivot);
        let p = a[rank][col].clone();
        for e in &mut a[rank] {
            *e /= p.clone();
        }
        for r in 0..a.len() {
            if r != rank && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in 0..ncols {
                    let sub = f.clone() * a[rank][c].clone();
                    a[r][c] -= sub;
                }
            }
        }
        rank += 1;
        if rank == a.len() {
            break;
        }
    }
    rank
}

/// Same oracle for machine-word matrices.
pub fn rational_rank_i64(rows: &[Vec<i64>]) -> usize {
    let big: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| r.iter().map(|&e| BigInt::from(e)).collect())
        .collect();
    rational_rank(&big)
}

/// Nullspace dimension straight from the rank-nullity identity.
pub fn rational_nullspace_dimension(rows: &[Vec<i64>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    rows[0].len() - rational_rank_i64(rows)
}

/// Whether the all-ones vector is annihilated, checked entry by entry.
pub fn annihilates_ones(rows: &[Vec<i64>]) -> bool {
    rows.iter().all(|r| r.iter().sum::<i64>() == 0)
}

/// Trial-division primality test.
pub fn is_prime_trial(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// All primes up to `bound` by trial division. Quadratic-ish and proud of it.
pub fn primes_trial(bound: u64) -> Vec<u64> {
    (2..=bound).filter(|&n| is_prime_trial(n)).collect()
}

/// Lexicographically least `(a, d)` with all of `a, a+d, ..., a+(k-1)d` in
/// `members` and `a + (k-1)d <= bound`, found by scanning every candidate
/// pair. `members` must be sorted ascending.
pub fn first_ap_brute(members: &[u64], k: u64, bound: u64) -> Option<(u64, u64)> {
    next_ap_brute(members, k, bound, None)
}

/// Brute-force successor of `after` in the lexicographic `(a, d)` order, or
/// the first progression when `after` is `None`.
pub fn next_ap_brute(
    members: &[u64],
    k: u64,
    bound: u64,
    after: Option<(u64, u64)>,
) -> Option<(u64, u64)> {
    let set: BTreeSet<u64> = members.iter().copied().collect();
    if k == 1 {
        return match after {
            None => set.iter().next().map(|&a| (a, 1)),
            Some((a, _)) => set.range(a + 1..).next().map(|&m| (m, 1)),
        };
    }
    for &a in &set {
        if a > bound {
            break;
        }
        let mut d = 1;
        if let Some((pa, pd)) = after {
            if a < pa {
                continue;
            }
            if a == pa {
                d = pd + 1;
            }
        }
        while a + (k - 1) * d <= bound {
            if (0..k).all(|lam| set.contains(&(a + lam * d))) {
                return Some((a, d));
            }
            d += 1;
        }
    }
    None
}

/// Every vector `x` with coordinates drawn from a single progression inside
/// `members` (length `k`, optionally with coprime base and step) such that
/// `rows * x = 0` and not all coordinates are equal. Coordinates are indexed
/// by an unpruned odometer over the `k^n` assignments.
pub fn ap_solutions_brute(
    rows: &[Vec<i64>],
    k: u64,
    members: &[u64],
    bound: u64,
    coprime_only: bool,
) -> BTreeSet<Vec<i64>> {
    let mut out = BTreeSet::new();
    if rows.is_empty() || k == 0 {
        return out;
    }
    let n = rows[0].len();
    let set: BTreeSet<u64> = members.iter().copied().collect();
    let mut cursor = None;
    while let Some((a, d)) = next_ap_brute(members, k, bound, cursor) {
        cursor = Some((a, d));
        if coprime_only && gcd_u64(a, d) != 1 {
            continue;
        }
        debug_assert!((0..k).all(|lam| set.contains(&(a + lam * d))));
        let mut lambda = vec![0u64; n];
        loop {
            let x: Vec<i64> = lambda.iter().map(|&l| (a + l * d) as i64).collect();
            let zero = rows.iter().all(|r| {
                r.iter().zip(&x).map(|(&c, &v)| c as i128 * v as i128).sum::<i128>() == 0
            });
            let varied = x.iter().any(|&v| v != x[0]);
            if zero && varied {
                out.insert(x);
            }
            let mut pos = n;
            loop {
                if pos == 0 {
                    break;
                }
                pos -= 1;
                lambda[pos] += 1;
                if lambda[pos] < k {
                    break;
                }
                lambda[pos] = 0;
            }
            if lambda.iter().all(|&l| l == 0) {
                break;
            }
        }
    }
    out
}

fn gcd_u64(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd_u64(b, a % b)
    }
}

/// Exact partial sum of reciprocals over the positive members, summed term by
/// term with no cleverness.
pub fn reciprocal_sum_brute(members: &[u64]) -> BigRational {
    let mut total = BigRational::zero();
    for &m in members {
        if m > 0 {
            total += BigRational::new(BigInt::one(), BigInt::from(m));
        }
    }
    total
}
