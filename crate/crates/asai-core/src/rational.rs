//! Arbitrary-precision rationals, kept reduced with positive denominator.
//!
//! Backed by `num_rational::BigRational`, which maintains both invariants.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::scalar::{FieldScalar, Scalar};

pub type Rational = num_rational::BigRational;

impl Scalar for Rational {
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }

    fn try_inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Self::one() / self)
        }
    }
}

impl FieldScalar for Rational {}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// p-adic valuation of a nonzero rational; `None` for zero.
pub fn vp_rational(r: &Rational, p: u64) -> Option<i64> {
    if r.is_zero() {
        return None;
    }
    let p = BigInt::from(p);
    let mut v = 0i64;
    let mut n = r.numer().abs();
    while (&n % &p).is_zero() {
        n /= &p;
        v += 1;
    }
    let mut d = r.denom().clone();
    while (&d % &p).is_zero() {
        d /= &p;
        v -= 1;
    }
    Some(v)
}

/// Parses a rational literal such as `-3/4` or `17`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        Some(Rational::new(n, d))
    } else {
        let n: BigInt = s.parse().ok()?;
        Some(Rational::from_integer(n))
    }
}

pub fn to_f64(r: &Rational) -> f64 {
    let n = r.numer();
    let d = r.denom();
    // Split to avoid overflow for large entries.
    let nf: f64 = n.to_string().parse().unwrap_or(f64::NAN);
    let df: f64 = d.to_string().parse().unwrap_or(f64::NAN);
    nf / df
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduced_and_positive_denominator() {
        let r = rat(4, -6);
        assert_eq!(r, rat(-2, 3));
        assert!(r.denom() > &BigInt::zero());
    }

    #[test]
    fn parse_literals() {
        assert_eq!(parse_rational("  -3/4 "), Some(rat(-3, 4)));
        assert_eq!(parse_rational("17"), Some(rat_int(17)));
        assert_eq!(parse_rational("1/0"), None);
    }

    #[test]
    fn valuations() {
        assert_eq!(vp_rational(&rat(18, 5), 3), Some(2));
        assert_eq!(vp_rational(&rat(5, 9), 3), Some(-2));
        assert_eq!(vp_rational(&Rational::zero(), 3), None);
    }
}
