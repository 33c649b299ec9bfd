//! Segmented sieve of Eratosthenes producing a primality bitmap.

use num_integer::Roots;

const SEGMENT: u64 = 1 << 16;

/// Bitmap with bit `x` set iff `x` is prime, for all `x <= bound`.
pub(crate) fn prime_bitmap(bound: u64) -> Vec<u64> {
    let mut words = vec![0u64; (bound >> 6) as usize + 1];
    let base = simple_primes(bound.sqrt());
    let mut composite = vec![false; SEGMENT as usize];

    let mut lo = 2u64;
    while lo <= bound {
        let hi = bound.min(lo + SEGMENT - 1);
        let len = (hi - lo + 1) as usize;
        composite[..len].fill(false);
        for &p in &base {
            if p * p > hi {
                break;
            }
            let mut m = (p * p).max(lo.div_ceil(p) * p);
            while m <= hi {
                composite[(m - lo) as usize] = true;
                m += p;
            }
        }
        for (offset, &c) in composite[..len].iter().enumerate() {
            if !c {
                let x = lo + offset as u64;
                words[(x >> 6) as usize] |= 1 << (x & 63);
            }
        }
        lo = hi + 1;
        if lo == 0 {
            break;
        }
    }
    words
}

/// Plain boolean sieve, used for the base primes up to the square root.
fn simple_primes(bound: u64) -> Vec<u64> {
    if bound < 2 {
        return Vec::new();
    }
    let n = bound as usize;
    let mut composite = vec![false; n + 1];
    let mut p = 2usize;
    while p * p <= n {
        if !composite[p] {
            let mut m = p * p;
            while m <= n {
                composite[m] = true;
                m += p;
            }
        }
        p += 1;
    }
    (2..=n as u64).filter(|&x| !composite[x as usize]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn primes_from_bitmap(bound: u64) -> Vec<u64> {
        let words = prime_bitmap(bound);
        (0..=bound).filter(|&x| (words[(x >> 6) as usize] >> (x & 63)) & 1 == 1).collect()
    }

    #[test]
    fn matches_known_counts() {
        assert_eq!(primes_from_bitmap(10), vec![2, 3, 5, 7]);
        assert_eq!(primes_from_bitmap(2), vec![2]);
        assert_eq!(primes_from_bitmap(100).len(), 25);
        assert_eq!(primes_from_bitmap(10_000).len(), 1229);
    }

    #[test]
    fn crosses_segment_boundaries() {
        // 65521 and 65537 straddle the first segment boundary.
        let primes = primes_from_bitmap(66_000);
        assert!(primes.contains(&65_521));
        assert!(primes.contains(&65_537));
        assert!(!primes.contains(&65_536));
    }
}
