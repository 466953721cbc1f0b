//! Truncated formal power series in one variable.
//!
//! A series carries its truncation order explicitly: a `FormalSeries` of
//! order `T` represents coefficients `c_0 .. c_{T-1}` and nothing beyond.
//! Arithmetic never extends the order; products and inverses of series with
//! orders `T1`, `T2` have order `min(T1, T2)`.

use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub struct FormalSeries<T: Scalar> {
    coeffs: Vec<T>,
}

impl<T: Scalar> FormalSeries<T> {
    pub fn from_coeffs(coeffs: Vec<T>) -> Self {
        Self { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self { coeffs: vec![T::zero(); order] }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        if order > 0 {
            s.coeffs[0] = T::one();
        }
        s
    }

    /// Monomial `c X^k`, truncated at `order`.
    pub fn monomial(c: T, k: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if k < order {
            s.coeffs[k] = c;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, i: usize) -> T {
        assert!(i < self.order(), "coefficient index beyond truncation order");
        self.coeffs[i].clone()
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn truncate(&self, order: usize) -> Self {
        let order = order.min(self.order());
        Self { coeffs: self.coeffs[..order].to_vec() }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        let coeffs = (0..n)
            .map(|i| self.coeffs[i].clone() + other.coeffs[i].clone())
            .collect();
        Self { coeffs }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        let coeffs = (0..n)
            .map(|i| self.coeffs[i].clone() - other.coeffs[i].clone())
            .collect();
        Self { coeffs }
    }

    pub fn neg(&self) -> Self {
        Self { coeffs: self.coeffs.iter().map(|c| -c.clone()).collect() }
    }

    pub fn scale(&self, c: &T) -> Self {
        Self { coeffs: self.coeffs.iter().map(|x| x.clone() * c.clone()).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        let mut coeffs = vec![T::zero(); n];
        for i in 0..n.min(self.coeffs.len()) {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..(n - i).min(other.coeffs.len()) {
                if other.coeffs[j].is_zero() {
                    continue;
                }
                coeffs[i + j] =
                    coeffs[i + j].clone() + self.coeffs[i].clone() * other.coeffs[j].clone();
            }
        }
        Self { coeffs }
    }

    /// Multiplicative inverse; requires an invertible constant term.
    pub fn try_inverse(&self) -> Option<Self> {
        let n = self.order();
        if n == 0 {
            return Some(Self { coeffs: vec![] });
        }
        let c0inv = self.coeffs[0].try_inv()?;
        let mut out = vec![T::zero(); n];
        out[0] = c0inv.clone();
        for k in 1..n {
            let mut acc = T::zero();
            for j in 1..=k {
                acc = acc + self.coeffs.get(j).cloned().unwrap_or_else(T::zero) * out[k - j].clone();
            }
            out[k] = -(c0inv.clone() * acc);
        }
        Some(Self { coeffs: out })
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> FormalSeries<U> {
        FormalSeries { coeffs: self.coeffs.iter().map(f).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Index and values of the first coefficient on which the two series
    /// disagree (up to the common truncation order).
    pub fn first_difference(&self, other: &Self) -> Option<(usize, T, T)> {
        let n = self.order().min(other.order());
        (0..n).find_map(|i| {
            if self.coeffs[i] != other.coeffs[i] {
                Some((i, self.coeffs[i].clone(), other.coeffs[i].clone()))
            } else {
                None
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat_int, Rational};

    fn geom(order: usize) -> FormalSeries<Rational> {
        // 1/(1-X)
        FormalSeries::from_coeffs(vec![rat_int(1); order])
    }

    #[test]
    fn order_min_rule() {
        let a = geom(5);
        let b = geom(3);
        assert_eq!(a.mul(&b).order(), 3);
        assert_eq!(a.add(&b).order(), 3);
    }

    #[test]
    fn inverse_of_geometric() {
        let g = geom(6);
        let inv = g.try_inverse().unwrap();
        // (1 - X)
        assert_eq!(inv.coeff(0), rat_int(1));
        assert_eq!(inv.coeff(1), rat_int(-1));
        assert!(inv.coeffs()[2..].iter().all(|c| c == &rat_int(0)));
    }
}
