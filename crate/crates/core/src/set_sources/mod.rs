//! Sources of the sets whose progressions we hunt for.
//!
//! A [`SetSource`] answers two questions about a fixed set of non-negative
//! integers: is `x` a member, and what are all members up to a bound. The
//! three implementations cover the cases the tools care about: primes from
//! a segmented sieve, explicit sets loaded from files, and strided demo
//! sets like the naturals or the multiples of a constant.
//!
//! All answers are deterministic. A prime source may grow its sieve on
//! demand; growing changes cost, never answers.

mod audit;
mod search;
mod sieve;

pub use audit::{audit_prime_like, ApRun, PrimeLikeReport};
pub use search::{find_ap, find_next_ap, ApIter, ApSearcher};

use std::collections::BTreeSet;
use std::io::Read;
use std::path::Path;
use std::sync::RwLock;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum SourceError {
    #[error("prime source needs a bound of at least 2, got {bound}")]
    InvalidBound { bound: u64 },
    #[error("bound {bound} is too large to materialize")]
    BoundTooLarge { bound: u64 },
    #[error("{x} is beyond the known bound {bound} of source `{name}`")]
    BeyondKnownBound { name: String, x: u64, bound: u64 },
    #[error("multiples source needs a positive modulus")]
    ZeroModulus,
    #[error("progression length must be at least 1")]
    ZeroApLength,
    #[error("prime-likeness audit needs k_max of at least 3, got {k_max}")]
    AuditLengthTooSmall { k_max: u64 },
    #[error("set member does not fit the requested scalar type")]
    ScalarOverflow,
    #[error("bitmap does not look like a sieve up to {bound}")]
    CorruptBitmap { bound: u64 },
    #[error("could not read set file: {0}")]
    Io(#[from] std::io::Error),
    #[error("set file line {line}: `{token}` is not a non-negative integer")]
    BadMember { line: usize, token: String },
    #[error("set file not increasing at line {line}")]
    NotIncreasing { line: usize },
}

/// A fixed set of non-negative integers that can answer membership queries
/// and enumerate itself up to a bound.
pub trait SetSource: Send + Sync {
    /// Short stable name, used in reports and error messages.
    fn name(&self) -> String;

    /// Whether `x` belongs to the set.
    fn contains(&self, x: u64) -> Result<bool, SourceError>;

    /// All members `<= bound`, ascending.
    fn members_up_to(&self, bound: u64) -> Result<Vec<u64>, SourceError>;

    /// The largest value up to which membership is currently materialized,
    /// or `None` when membership is computed from a formula and every query
    /// is cheap.
    fn known_bound(&self) -> Option<u64>;
}

const MAX_SIEVE_BOUND: u64 = 1 << 40;

#[derive(Debug)]
struct PrimeBits {
    bound: u64,
    words: Vec<u64>,
}

impl PrimeBits {
    fn bit(&self, x: u64) -> bool {
        (self.words[(x >> 6) as usize] >> (x & 63)) & 1 == 1
    }
}

/// The primes, materialized as a sieve bitmap up to a bound.
///
/// An extendable source (the default) transparently re-sieves when asked
/// about larger values, at least doubling each time; a fixed source reports
/// an error instead. Either way the same query always gets the same answer.
#[derive(Debug)]
pub struct PrimeSource {
    extendable: bool,
    state: RwLock<PrimeBits>,
}

impl PrimeSource {
    /// Sieve up to `bound` now, extending later if queries go beyond it.
    pub fn with_bound(bound: u64) -> Result<Self, SourceError> {
        Self::build(bound, true)
    }

    /// Sieve up to `bound` and refuse to answer beyond it.
    pub fn fixed(bound: u64) -> Result<Self, SourceError> {
        Self::build(bound, false)
    }

    fn build(bound: u64, extendable: bool) -> Result<Self, SourceError> {
        check_bound(bound)?;
        let words = sieve::prime_bitmap(bound);
        Ok(PrimeSource { extendable, state: RwLock::new(PrimeBits { bound, words }) })
    }

    /// Rebuild a source from a previously exported bitmap, for sieve caches.
    /// The bitmap's low word is checked against a freshly computed one so a
    /// corrupt cache fails loudly instead of silently changing answers.
    pub fn from_bitmap(bound: u64, words: Vec<u64>) -> Result<Self, SourceError> {
        check_bound(bound)?;
        if words.len() != (bound >> 6) as usize + 1 {
            return Err(SourceError::CorruptBitmap { bound });
        }
        let fresh = sieve::prime_bitmap(bound.min(127));
        let width = bound.min(127);
        let mask = |w: u64, upto: u64| if upto >= 63 { w } else { w & ((1u64 << (upto + 1)) - 1) };
        if mask(words[0], width) != mask(fresh[0], width) {
            return Err(SourceError::CorruptBitmap { bound });
        }
        if width >= 64 && mask(words[1], width - 64) != mask(fresh[1], width - 64) {
            return Err(SourceError::CorruptBitmap { bound });
        }
        Ok(PrimeSource { extendable: true, state: RwLock::new(PrimeBits { bound, words }) })
    }

    /// Export the current bound and bitmap, for sieve caches.
    pub fn bitmap(&self) -> (u64, Vec<u64>) {
        let state = self.state.read().expect("sieve lock poisoned");
        (state.bound, state.words.clone())
    }

    /// Make sure the sieve covers `x`, growing it when allowed.
    fn ensure(&self, x: u64) -> Result<(), SourceError> {
        {
            let state = self.state.read().expect("sieve lock poisoned");
            if x <= state.bound {
                return Ok(());
            }
            if !self.extendable {
                return Err(SourceError::BeyondKnownBound {
                    name: self.name(),
                    x,
                    bound: state.bound,
                });
            }
        }
        let mut state = self.state.write().expect("sieve lock poisoned");
        if x > state.bound {
            let target = x.max(state.bound.saturating_mul(2));
            check_bound(target)?;
            state.words = sieve::prime_bitmap(target);
            state.bound = target;
        }
        Ok(())
    }
}

impl SetSource for PrimeSource {
    fn name(&self) -> String {
        "primes".to_string()
    }

    fn contains(&self, x: u64) -> Result<bool, SourceError> {
        self.ensure(x)?;
        let state = self.state.read().expect("sieve lock poisoned");
        Ok(state.bit(x))
    }

    fn members_up_to(&self, bound: u64) -> Result<Vec<u64>, SourceError> {
        self.ensure(bound)?;
        let state = self.state.read().expect("sieve lock poisoned");
        Ok((2..=bound).filter(|&x| state.bit(x)).collect())
    }

    fn known_bound(&self) -> Option<u64> {
        let state = self.state.read().expect("sieve lock poisoned");
        Some(state.bound)
    }
}

fn check_bound(bound: u64) -> Result<(), SourceError> {
    if bound < 2 {
        return Err(SourceError::InvalidBound { bound });
    }
    if bound > MAX_SIEVE_BOUND {
        return Err(SourceError::BoundTooLarge { bound });
    }
    Ok(())
}

/// An explicit finite set read from a listing: one non-negative integer per
/// line, strictly increasing, `#` comments and blank lines ignored.
///
/// A file source answers for *all* of the naturals: values beyond its last
/// member are simply not in the set. The listing is the set.
#[derive(Debug)]
pub struct FileSource {
    label: String,
    members: Vec<u64>,
}

impl FileSource {
    pub fn from_path(path: &Path) -> Result<Self, SourceError> {
        let mut text = String::new();
        std::fs::File::open(path)?.read_to_string(&mut text)?;
        let label = format!("file:{}", path.display());
        Self::parse(label, &text)
    }

    /// Parse a listing; `label` is the name used in reports.
    pub fn parse(label: impl Into<String>, text: &str) -> Result<Self, SourceError> {
        let mut members = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let value: u64 = line
                .parse()
                .map_err(|_| SourceError::BadMember { line: i + 1, token: line.to_string() })?;
            if let Some(&last) = members.last() {
                if value <= last {
                    return Err(SourceError::NotIncreasing { line: i + 1 });
                }
            }
            members.push(value);
        }
        Ok(FileSource { label: label.into(), members })
    }

    /// Build from an explicit member list, mostly for tests and generated
    /// sets. The list must be strictly increasing.
    pub fn from_members(label: impl Into<String>, members: Vec<u64>) -> Result<Self, SourceError> {
        for (i, pair) in members.windows(2).enumerate() {
            if pair[1] <= pair[0] {
                return Err(SourceError::NotIncreasing { line: i + 2 });
            }
        }
        Ok(FileSource { label: label.into(), members })
    }

    pub fn members(&self) -> &[u64] {
        &self.members
    }
}

impl SetSource for FileSource {
    fn name(&self) -> String {
        self.label.clone()
    }

    fn contains(&self, x: u64) -> Result<bool, SourceError> {
        Ok(self.members.binary_search(&x).is_ok())
    }

    fn members_up_to(&self, bound: u64) -> Result<Vec<u64>, SourceError> {
        let end = self.members.partition_point(|&m| m <= bound);
        Ok(self.members[..end].to_vec())
    }

    fn known_bound(&self) -> Option<u64> {
        Some(self.members.last().copied().unwrap_or(0))
    }
}

/// Formula-backed demo set `{start, start + stride, start + 2*stride, ...}`.
#[derive(Debug)]
pub struct StridedSource {
    label: String,
    start: u64,
    stride: u64,
}

impl StridedSource {
    /// The naturals `0, 1, 2, ...`.
    pub fn naturals() -> Self {
        StridedSource { label: "naturals".to_string(), start: 0, stride: 1 }
    }

    /// The multiples of `modulus`, starting at 0.
    pub fn multiples(modulus: u64) -> Result<Self, SourceError> {
        if modulus == 0 {
            return Err(SourceError::ZeroModulus);
        }
        Ok(StridedSource { label: format!("multiples:{modulus}"), start: 0, stride: modulus })
    }
}

impl SetSource for StridedSource {
    fn name(&self) -> String {
        self.label.clone()
    }

    fn contains(&self, x: u64) -> Result<bool, SourceError> {
        Ok(x >= self.start && (x - self.start).is_multiple_of(self.stride))
    }

    fn members_up_to(&self, bound: u64) -> Result<Vec<u64>, SourceError> {
        if bound < self.start {
            return Ok(Vec::new());
        }
        Ok((self.start..=bound).step_by(self.stride as usize).collect())
    }

    fn known_bound(&self) -> Option<u64> {
        None
    }
}

/// Deduplicated ascending member list used by searches: a vector for
/// iteration plus a constant-time membership structure.
pub(crate) struct MemberView {
    members: Vec<u64>,
    lookup: Lookup,
}

enum Lookup {
    Bits(Vec<u64>),
    Set(BTreeSet<u64>),
}

const MAX_BITS_BOUND: u64 = 1 << 28;

impl MemberView {
    pub(crate) fn build(source: &dyn SetSource, bound: u64) -> Result<Self, SourceError> {
        let members = source.members_up_to(bound)?;
        let lookup = if bound <= MAX_BITS_BOUND {
            let mut words = vec![0u64; (bound >> 6) as usize + 1];
            for &m in &members {
                words[(m >> 6) as usize] |= 1 << (m & 63);
            }
            Lookup::Bits(words)
        } else {
            Lookup::Set(members.iter().copied().collect())
        };
        Ok(MemberView { members, lookup })
    }

    pub(crate) fn members(&self) -> &[u64] {
        &self.members
    }

    pub(crate) fn contains(&self, x: u64) -> bool {
        match &self.lookup {
            Lookup::Bits(words) => match words.get((x >> 6) as usize) {
                Some(w) => (w >> (x & 63)) & 1 == 1,
                None => false,
            },
            Lookup::Set(set) => set.contains(&x),
        }
    }
}
