//! Audit whether a set behaves like the primes with respect to the
//! progressions it contains.
//!
//! The property checked: every progression of length at least 3 inside the
//! set has coprime base and step. The finiteness argument for constrained
//! solutions leans on exactly this, so the audit doubles as a warning light
//! when someone points the solver at a set (the naturals, the evens, a
//! custom file) where the guarantee does not hold.
//!
//! A *run* here is a pair `(a, d)` whose first three elements lie in the
//! set, extended forward greedily while elements stay in the set and below
//! the bound. Every run start is examined, so sub-progressions of a longer
//! run are covered by their own runs. Violations are reported twice: once
//! for every run, and once restricted to maximal runs (those that cannot be
//! extended backward; forward extension is exhausted by construction, up to
//! the window's edge).

use super::{MemberView, SetSource, SourceError};

/// One progression run found inside the audited window.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApRun {
    pub base: u64,
    pub step: u64,
    /// Full greedy length within the bound, at least 3.
    pub length: u64,
    /// `min(length, k_max)`, the part the audit vouches for.
    pub audited_length: u64,
    /// Whether `base - step` is also in the set.
    pub backward_extendable: bool,
}

impl ApRun {
    /// A run is maximal when it cannot be extended backward; forward growth
    /// was already exhausted when the run was recorded.
    pub fn is_maximal(&self) -> bool {
        !self.backward_extendable
    }
}

/// Outcome of a prime-likeness audit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeLikeReport {
    pub k_max: u64,
    pub search_bound: u64,
    /// Number of runs examined (every `(a, d)` with three leading elements
    /// in the set and `a + 2d <= search_bound`).
    pub runs_examined: u64,
    /// Runs whose step is odd. For the primes this is zero: a run from an
    /// odd base with odd step hits an even value immediately.
    pub odd_step_runs: u64,
    /// Runs with `gcd(base, step) != 1`, the reading where *every*
    /// progression in the set must be coprime.
    pub violations: Vec<ApRun>,
    /// The subset of `violations` on maximal runs only, the weaker reading.
    pub maximal_violations: Vec<ApRun>,
}

impl PrimeLikeReport {
    /// Prime-like under the strict reading (and therefore under both).
    pub fn is_prime_like(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Examine every progression run of length at least 3 within `search_bound`
/// and report the runs violating coprimality of base and step.
pub fn audit_prime_like(
    source: &dyn SetSource,
    k_max: u64,
    search_bound: u64,
) -> Result<PrimeLikeReport, SourceError> {
    if k_max < 3 {
        return Err(SourceError::AuditLengthTooSmall { k_max });
    }
    let view = MemberView::build(source, search_bound)?;
    let mut report = PrimeLikeReport {
        k_max,
        search_bound,
        runs_examined: 0,
        odd_step_runs: 0,
        violations: Vec::new(),
        maximal_violations: Vec::new(),
    };
    for &a in view.members() {
        if a + 2 > search_bound {
            break;
        }
        let d_max = (search_bound - a) / 2;
        for d in 1..=d_max {
            if !view.contains(a + d) || !view.contains(a + 2 * d) {
                continue;
            }
            let mut length = 3u64;
            while a + length * d <= search_bound && view.contains(a + length * d) {
                length += 1;
            }
            report.runs_examined += 1;
            if d % 2 == 1 {
                report.odd_step_runs += 1;
            }
            if gcd(a, d) != 1 {
                let run = ApRun {
                    base: a,
                    step: d,
                    length,
                    audited_length: length.min(k_max),
                    backward_extendable: a >= d && view.contains(a - d),
                };
                if run.is_maximal() {
                    report.maximal_violations.push(run.clone());
                }
                report.violations.push(run);
            }
        }
    }
    Ok(report)
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}
