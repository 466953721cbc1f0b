//! Scalar traits shared by every exact coefficient domain.
//!
//! The series, polynomial and rational-function machinery is generic over
//! [`Scalar`]; domains that admit division implement [`FieldScalar`].

use num_traits::{One, Zero};
use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use crate::rational::Rational;

/// A commutative ring element with exact equality.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
{
    /// Embeds a rational constant into the domain.
    fn from_rational(r: &Rational) -> Self;

    /// Multiplicative inverse when one exists in the domain.
    ///
    /// Rings that are not fields return `None` for non-units (e.g. a
    /// multivariate polynomial that is not a monomial).
    fn try_inv(&self) -> Option<Self>;

    fn from_int(n: i64) -> Self {
        Self::from_rational(&Rational::from_integer(n.into()))
    }
}

/// Marker for domains in which every nonzero element is invertible.
pub trait FieldScalar: Scalar {
    fn inv(&self) -> Self {
        self.try_inv().expect("division by zero")
    }
}
