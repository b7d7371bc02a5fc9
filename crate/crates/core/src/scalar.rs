//! The exact integer ring every computation in this crate is generic over.
//!
//! Anything that behaves like ℤ works: `i64` and `i128` for quick sweeps where
//! the caller knows the values stay small, and [`num_bigint::BigInt`] (the
//! default behind the crate-root aliases) when they may not.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_integer::Integer;
use num_traits::{FromPrimitive, Signed, ToPrimitive};

/// An exact, signed, Euclidean integer type.
pub trait Scalar:
    Integer + Signed + Clone + Ord + Hash + Debug + Display + FromPrimitive + ToPrimitive + Send + Sync + 'static
{
    /// Lifts a small literal into the ring.
    fn lit(v: i64) -> Self {
        Self::from_i64(v).expect("literal does not fit the scalar type")
    }
}

impl<T> Scalar for T where
    T: Integer + Signed + Clone + Ord + Hash + Debug + Display + FromPrimitive + ToPrimitive + Send + Sync + 'static
{
}

/// Non-negative gcd.
pub fn gcd<T: Scalar>(a: &T, b: &T) -> T {
    a.gcd(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn lit_and_gcd_agree_across_types() {
        assert_eq!(gcd(&i64::lit(-12), &i64::lit(18)), 6);
        assert_eq!(gcd(&BigInt::lit(-12), &BigInt::lit(18)), BigInt::from(6));
        assert_eq!(gcd(&0i128, &0i128), 0);
    }
}
