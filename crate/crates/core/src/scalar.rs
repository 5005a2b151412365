//! The coefficient field shared by every algebraic object in the crate.
//!
//! Everything downstream (polynomials, Gröbner bases, tensors, Lie algebra
//! chains) is generic over [`Scalar`]. Only exact fields make sense here:
//! reduced Gröbner bases and ranks depend on testing coefficients for zero,
//! so floating point types deliberately do not implement the trait.

use std::fmt::{Debug, Display};
use std::ops::Neg;

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{Num, One, Signed, Zero};

/// An exact field usable as a coefficient domain.
pub trait Scalar:
    Num + Neg<Output = Self> + Clone + Eq + Ord + Debug + Display + Send + Sync + 'static
{
    /// Builds `num / den` from machine integers. Panics if `den == 0`.
    fn from_ratio(num: i64, den: i64) -> Self;

    /// Parses an unsigned decimal integer literal.
    fn from_decimal(digits: &str) -> Option<Self>;

    fn from_int(n: i64) -> Self {
        Self::from_ratio(n, 1)
    }

    /// True when the value is an integer (used by the printer).
    fn is_integral(&self) -> bool;

    fn is_negative(&self) -> bool {
        *self < Self::zero()
    }

    fn abs(&self) -> Self {
        if self.is_negative() {
            -self.clone()
        } else {
            self.clone()
        }
    }

    fn inv(&self) -> Self {
        Self::one() / self.clone()
    }
}

impl Scalar for Ratio<BigInt> {
    fn from_ratio(num: i64, den: i64) -> Self {
        Ratio::new(BigInt::from(num), BigInt::from(den))
    }

    fn from_decimal(digits: &str) -> Option<Self> {
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        digits.parse::<BigInt>().ok().map(Ratio::from_integer)
    }

    fn is_integral(&self) -> bool {
        self.denom().is_one()
    }

    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
}

macro_rules! machine_ratio {
    ($($t:ty),*) => {$(
        impl Scalar for Ratio<$t> {
            fn from_ratio(num: i64, den: i64) -> Self {
                Ratio::new(num as $t, den as $t)
            }

            fn from_decimal(digits: &str) -> Option<Self> {
                if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                    return None;
                }
                digits.parse::<$t>().ok().map(Ratio::from_integer)
            }

            fn is_integral(&self) -> bool {
                self.denom().is_one()
            }
        }
    )*};
}

machine_ratio!(i64, i128);

/// Zero test that reads better at call sites than `Zero::is_zero`.
pub(crate) fn is_zero<F: Scalar>(x: &F) -> bool {
    Zero::is_zero(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    #[test]
    fn rationals_stay_reduced() {
        let r = Rational::from_ratio(6, -4);
        assert_eq!(r.to_string(), "-3/2");
        assert_eq!(Rational::from_ratio(0, 7).to_string(), "0");
        assert!(Rational::from_int(3).is_integral());
        assert!(!r.is_integral());
    }

    #[test]
    fn decimal_literals() {
        assert_eq!(
            Rational::from_decimal("123456789012345678901234567890")
                .unwrap()
                .to_string(),
            "123456789012345678901234567890"
        );
        assert!(Rational::from_decimal("").is_none());
        assert!(Rational::from_decimal("1x").is_none());
        assert_eq!(
            Ratio::<i64>::from_decimal("42").unwrap(),
            Ratio::from_integer(42)
        );
    }
}
