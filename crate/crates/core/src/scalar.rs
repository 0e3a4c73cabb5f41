//! Scalar traits the polynomial and linear-algebra code is generic over.
//!
//! Everything in this crate is exact. [`Coefficient`] covers the integer-like
//! rings used for series coefficients (`BigInt`, `i64`, `i128`, and rationals
//! when a division ring is convenient); [`Field`] marks the types the exact
//! linear solver may divide in.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{FromPrimitive, Num, Signed, ToPrimitive};

/// An exact commutative ring element usable as a polynomial coefficient.
pub trait Coefficient:
    Num + Signed + Clone + FromPrimitive + FromStr + fmt::Display + fmt::Debug + Send + Sync + 'static
{
    /// Lossless conversion from a counted quantity.
    fn from_count(count: u64) -> Self {
        Self::from_u64(count).expect("count does not fit the coefficient type")
    }

    /// Lossless conversion from a signed machine integer.
    fn from_int(value: i64) -> Self {
        Self::from_i64(value).expect("integer does not fit the coefficient type")
    }
}

impl<T> Coefficient for T where
    T: Num + Signed + Clone + FromPrimitive + FromStr + fmt::Display + fmt::Debug + Send + Sync + 'static
{
}

/// A coefficient type with exact division by any nonzero element.
pub trait Field: Coefficient {
    /// Some(value) when the element has denominator one and fits in `i64`.
    fn as_i64(&self) -> Option<i64>;
}

impl Field for Ratio<BigInt> {
    fn as_i64(&self) -> Option<i64> {
        if self.is_integer() {
            self.numer().to_i64()
        } else {
            None
        }
    }
}

impl Field for Ratio<i64> {
    fn as_i64(&self) -> Option<i64> {
        self.is_integer().then(|| *self.numer())
    }
}

impl Field for Ratio<i128> {
    fn as_i64(&self) -> Option<i64> {
        if self.is_integer() {
            i64::try_from(*self.numer()).ok()
        } else {
            None
        }
    }
}
