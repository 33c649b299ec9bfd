//! Scalar abstraction for the exact arithmetic engine.
//!
//! Everything that computes is generic over [`Int`], a signed integer with
//! exact semantics. `BigInt` is the canonical instantiation and the one the
//! crate-root aliases use; `i64` and `i128` satisfy the trait too and are
//! convenient for small experiments, with the caveat that elimination forms
//! products of minors, so machine words only stay safe while entries and
//! intermediate determinants fit.

use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::str::FromStr;

use num_traits::{FromPrimitive, NumAssign, Signed, ToPrimitive};

/// Exact signed integer scalar.
///
/// The bounds are exactly what the algorithms need: ring arithmetic with
/// Euclidean division and gcd (`num_integer::Integer`), signs, conversions
/// to and from machine integers, and enough plumbing to hash, print, and
/// parse values.
pub trait Int:
    num_integer::Integer
    + Signed
    + NumAssign
    + FromPrimitive
    + ToPrimitive
    + Clone
    + Hash
    + Debug
    + Display
    + FromStr
    + Send
    + Sync
    + 'static
{
}

impl<T> Int for T where
    T: num_integer::Integer
        + Signed
        + NumAssign
        + FromPrimitive
        + ToPrimitive
        + Clone
        + Hash
        + Debug
        + Display
        + FromStr
        + Send
        + Sync
        + 'static
{
}

/// Lift an `i64` into any [`Int`]. Every supported scalar holds all of `i64`.
pub fn int<T: Int>(value: i64) -> T {
    T::from_i64(value).expect("i64 values fit every Int scalar")
}

/// Lift a `u64` set member into the scalar type, if it fits.
pub fn nat<T: Int>(value: u64) -> Option<T> {
    T::from_u64(value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn conversions_round_trip() {
        let x: BigInt = int(-42);
        assert_eq!(x.to_string(), "-42");
        let y: i64 = int(7);
        assert_eq!(y, 7);
        assert_eq!(nat::<i64>(u64::MAX), None);
        assert_eq!(nat::<BigInt>(u64::MAX), Some(BigInt::from(u64::MAX)));
    }
}
