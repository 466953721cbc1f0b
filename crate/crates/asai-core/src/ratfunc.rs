//! Rational functions in one formal variable over a scalar domain.
//!
//! The denominator is required to have an invertible constant term, so a
//! Taylor expansion always exists. The canonical form scales numerator and
//! denominator so the denominator's constant term is 1.

use crate::poly::Poly;
use crate::scalar::Scalar;
use crate::series::FormalSeries;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum RatFuncError {
    #[error("not expandable: denominator constant term is not invertible")]
    NotExpandable,
}

#[derive(Clone, Debug)]
pub struct RationalFunction<T: Scalar> {
    num: Poly<T>,
    den: Poly<T>,
}

impl<T: Scalar> RationalFunction<T> {
    /// Builds `num/den`; fails when the denominator constant term is not a unit.
    pub fn new(num: Poly<T>, den: Poly<T>) -> Result<Self, RatFuncError> {
        let c0 = den.coeff(0);
        let c0inv = c0.try_inv().ok_or(RatFuncError::NotExpandable)?;
        Ok(Self { num: num.scale(&c0inv), den: den.scale(&c0inv) })
    }

    pub fn from_poly(num: Poly<T>) -> Self {
        Self { num, den: Poly::one() }
    }

    pub fn one() -> Self {
        Self::from_poly(Poly::one())
    }

    pub fn constant(c: T) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    /// `1 / prod (1 - r_i X)`
    pub fn inverse_linear_product(roots: &[T]) -> Self {
        let mut den = Poly::one();
        for r in roots {
            den = den.mul(&Poly::from_coeffs(vec![T::one(), -r.clone()]));
        }
        Self { num: Poly::one(), den }
    }

    pub fn numerator(&self) -> &Poly<T> {
        &self.num
    }

    pub fn denominator(&self) -> &Poly<T> {
        &self.den
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self { num: self.num.mul(&other.num), den: self.den.mul(&other.den) }
    }

    pub fn add(&self, other: &Self) -> Self {
        Self {
            num: self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            den: self.den.mul(&other.den),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self {
            num: self.num.mul(&other.den).sub(&other.num.mul(&self.den)),
            den: self.den.mul(&other.den),
        }
    }

    pub fn scale(&self, c: &T) -> Self {
        Self { num: self.num.scale(c), den: self.den.clone() }
    }

    /// Reciprocal; requires the numerator constant term to be invertible.
    pub fn try_reciprocal(&self) -> Option<Self> {
        Self::new(self.den.clone(), self.num.clone()).ok()
    }

    /// Taylor expansion to the requested truncation order (exact coefficients).
    pub fn expand(&self, order: usize) -> FormalSeries<T> {
        let den_series = self.den.to_series(order);
        let inv = den_series
            .try_inverse()
            .expect("canonical form guarantees invertible constant term");
        self.num.to_series(order).mul(&inv)
    }

    /// Equality as rational functions (cross multiplication).
    pub fn equal(&self, other: &Self) -> bool {
        self.num.mul(&other.den) == other.num.mul(&self.den)
    }
}

/// Expands `rf` as a formal power series to `order` coefficients.
pub fn expand_rational_function<T: Scalar>(
    rf: &RationalFunction<T>,
    order: usize,
) -> FormalSeries<T> {
    rf.expand(order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat_int, Rational};

    fn lin(c: i64) -> Poly<Rational> {
        // 1 - cX
        Poly::from_coeffs(vec![rat_int(1), rat_int(-c)])
    }

    #[test]
    fn geometric_series_order_four() {
        // 1/(1-X) to order 4 -> 1 + X + X^2 + X^3
        let rf = RationalFunction::new(Poly::one(), lin(1)).unwrap();
        let s = rf.expand(4);
        assert_eq!(s.coeffs(), &[rat_int(1), rat_int(1), rat_int(1), rat_int(1)]);
    }

    #[test]
    fn convolution_coefficient() {
        // 1/((1-2X)(1-3X)): coefficient of X^2 is 4 + 6 + 9 = 19
        let rf = RationalFunction::new(Poly::one(), lin(2).mul(&lin(3))).unwrap();
        assert_eq!(rf.expand(3).coeff(2), rat_int(19));
    }

    #[test]
    fn zero_constant_term_rejected() {
        let den = Poly::from_coeffs(vec![rat_int(0), rat_int(1)]);
        assert_eq!(
            RationalFunction::new(Poly::<Rational>::one(), den).unwrap_err(),
            RatFuncError::NotExpandable
        );
    }

    #[test]
    fn product_expansion_matches_expansion_product() {
        let a = RationalFunction::new(Poly::one(), lin(2)).unwrap();
        let b = RationalFunction::new(lin(5), lin(3)).unwrap();
        let lhs = a.mul(&b).expand(12);
        let rhs = a.expand(12).mul(&b.expand(12));
        assert_eq!(lhs, rhs);
    }
}
