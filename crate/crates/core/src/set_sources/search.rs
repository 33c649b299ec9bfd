//! Lexicographic search for arithmetic progressions inside a set.
//!
//! Progressions are ordered by `(base, step)`. The searcher materializes
//! the members up to the search bound once and then walks candidate pairs
//! in order: for each base `a` in the set, steps `d = 1, 2, ...` as long as
//! `a + (k-1)*d` stays within the bound. Membership of the intermediate
//! elements is a bitmap or tree lookup, so the walk costs nothing per miss
//! beyond the first absent element.

use crate::num::{nat, Int};
use crate::progressions::Ap;

use super::{MemberView, SetSource, SourceError};

/// Stateful search for length-`k` progressions inside `source` bounded by
/// `a + (k-1)*d <= bound`.
pub struct ApSearcher {
    k: u64,
    bound: u64,
    view: MemberView,
}

impl ApSearcher {
    pub fn new(source: &dyn SetSource, k: u64, bound: u64) -> Result<Self, SourceError> {
        if k == 0 {
            return Err(SourceError::ZeroApLength);
        }
        let view = MemberView::build(source, bound)?;
        Ok(ApSearcher { k, bound, view })
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    pub fn bound(&self) -> u64 {
        self.bound
    }

    /// Members the search runs over, ascending.
    pub fn members(&self) -> &[u64] {
        self.view.members()
    }

    pub fn contains_member(&self, x: u64) -> bool {
        self.view.contains(x)
    }

    /// First progression in lexicographic `(base, step)` order.
    pub fn first(&self) -> Option<(u64, u64)> {
        self.next_after(None)
    }

    /// Successor of `after` in lexicographic order, or the first progression
    /// when `after` is `None`. Length-1 progressions are reported with step 1.
    pub fn next_after(&self, after: Option<(u64, u64)>) -> Option<(u64, u64)> {
        let members = self.view.members();
        if self.k == 1 {
            return match after {
                None => members.first().map(|&m| (m, 1)),
                Some((a, _)) => {
                    let i = members.partition_point(|&m| m <= a);
                    members.get(i).map(|&m| (m, 1))
                }
            };
        }

        let start = match after {
            None => 0,
            Some((a, _)) => members.partition_point(|&m| m < a),
        };
        let span = self.k - 1;
        for &a in members.iter().skip(start) {
            if a > self.bound {
                break;
            }
            let mut d = 1;
            if let Some((pa, pd)) = after {
                if a == pa {
                    d = pd + 1;
                }
            }
            let d_max = (self.bound - a) / span;
            while d <= d_max {
                if (1..self.k).all(|lam| self.view.contains(a + lam * d)) {
                    return Some((a, d));
                }
                d += 1;
            }
        }
        None
    }

    /// All progressions in lexicographic order.
    pub fn iter(&self) -> ApIter<'_> {
        ApIter { searcher: self, cursor: None, done: false }
    }
}

/// Iterator over a searcher's progressions, lexicographic by `(base, step)`.
pub struct ApIter<'a> {
    searcher: &'a ApSearcher,
    cursor: Option<(u64, u64)>,
    done: bool,
}

impl Iterator for ApIter<'_> {
    type Item = (u64, u64);

    fn next(&mut self) -> Option<(u64, u64)> {
        if self.done {
            return None;
        }
        match self.searcher.next_after(self.cursor) {
            Some(pair) => {
                self.cursor = Some(pair);
                Some(pair)
            }
            None => {
                self.done = true;
                None
            }
        }
    }
}

/// The lexicographically least length-`k` progression in the source with all
/// elements `<= bound`, or `None` when no such progression exists there.
pub fn find_ap<T: Int>(
    source: &dyn SetSource,
    k: u64,
    bound: u64,
) -> Result<Option<Ap<T>>, SourceError> {
    let searcher = ApSearcher::new(source, k, bound)?;
    searcher.first().map(|pair| to_ap(k, pair)).transpose()
}

/// The next progression strictly after `after` in lexicographic order.
pub fn find_next_ap<T: Int>(
    source: &dyn SetSource,
    k: u64,
    bound: u64,
    after: (u64, u64),
) -> Result<Option<Ap<T>>, SourceError> {
    let searcher = ApSearcher::new(source, k, bound)?;
    searcher.next_after(Some(after)).map(|pair| to_ap(k, pair)).transpose()
}

fn to_ap<T: Int>(k: u64, (a, d): (u64, u64)) -> Result<Ap<T>, SourceError> {
    let base = nat::<T>(a).ok_or(SourceError::ScalarOverflow)?;
    let step = nat::<T>(d).ok_or(SourceError::ScalarOverflow)?;
    Ap::new(k, base, step).map_err(|_| SourceError::ScalarOverflow)
}
