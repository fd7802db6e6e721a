//! Integer scalars the exact linear algebra is generic over.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{FromPrimitive, Signed, ToPrimitive};

/// A Euclidean ring of integers: `i64`, `i128`, or arbitrary precision [`BigInt`].
///
/// Fixed-width types overflow silently in release builds; everything the
/// library computes for quivers goes through `BigInt`.
pub trait IntegerRing:
    Integer + Signed + Clone + Debug + Display + Hash + FromPrimitive + ToPrimitive + Send + Sync + 'static
{
    /// Lossless conversion to arbitrary precision.
    fn to_bigint(&self) -> BigInt;

    fn from_i64(v: i64) -> Self {
        <Self as FromPrimitive>::from_i64(v).expect("integer scalar must hold every i64")
    }
}

impl IntegerRing for i64 {
    fn to_bigint(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl IntegerRing for i128 {
    fn to_bigint(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl IntegerRing for BigInt {
    fn to_bigint(&self) -> BigInt {
        self.clone()
    }
}

/// Extended gcd: returns `(g, x, y)` with `g = x*a + y*b` and `g >= 0`.
pub fn extended_gcd<T: IntegerRing>(a: &T, b: &T) -> (T, T, T) {
    let ext = a.extended_gcd(b);
    if ext.gcd.is_negative() {
        (-ext.gcd, -ext.x, -ext.y)
    } else {
        (ext.gcd, ext.x, ext.y)
    }
}
