//! Exact scalar fields.
//!
//! Everything in this crate is generic over [`Scalar`], an ordered field
//! with exact equality. Floating point types deliberately do not qualify
//! (`f64` is not `Ord`): the identities checked here are exact.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{Num, Signed};

/// An exact ordered field.
pub trait Scalar:
    Clone + Debug + Display + Num + Signed + Ord + Hash + Send + Sync + 'static
{
    fn from_int(n: i64) -> Self;

    fn from_frac(numer: i64, denom: i64) -> Self {
        Self::from_int(numer) / Self::from_int(denom)
    }

    /// `true` when the value is an integer.
    fn is_integral(&self) -> bool;
}

impl Scalar for BigRational {
    fn from_int(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn is_integral(&self) -> bool {
        self.is_integer()
    }
}

macro_rules! small_ratio_scalar {
    ($($int:ty),*) => {$(
        impl Scalar for Ratio<$int> {
            fn from_int(n: i64) -> Self {
                Ratio::from_integer(<$int>::from(n))
            }

            fn is_integral(&self) -> bool {
                self.is_integer()
            }
        }
    )*};
}

small_ratio_scalar!(i64, i128);

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fractions_reduce() {
        let half = BigRational::from_frac(2, 4);
        assert_eq!(half, BigRational::from_frac(1, 2));
        assert!(!half.is_integral());
        assert!(Ratio::<i64>::from_frac(6, 3).is_integral());
    }
}
