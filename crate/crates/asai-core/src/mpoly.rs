//! Sparse multivariate Laurent polynomials over the rationals.
//!
//! Exponents may be negative, so monomials are invertible; this is the
//! coefficient domain used for fully symbolic Satake parameters.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::rational::Rational;
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct VarSet(Arc<Vec<String>>);

impl VarSet {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Self {
        VarSet(Arc::new(names.into_iter().map(Into::into).collect()))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn var(&self, i: usize) -> MPoly {
        let mut e = vec![0i32; self.len()];
        e[i] = 1;
        MPoly::from_terms(self.clone(), [(e, Rational::one())])
    }
}

/// A Laurent polynomial in the variables of its [`VarSet`].
#[derive(Clone, Debug)]
pub struct MPoly {
    vars: VarSet,
    terms: BTreeMap<Vec<i32>, Rational>,
}

impl PartialEq for MPoly {
    fn eq(&self, other: &Self) -> bool {
        if self.is_constant() && other.is_constant() {
            return self.constant_value() == other.constant_value();
        }
        self.vars == other.vars && self.terms == other.terms
    }
}

impl MPoly {
    pub fn from_terms(
        vars: VarSet,
        terms: impl IntoIterator<Item = (Vec<i32>, Rational)>,
    ) -> Self {
        let mut map = BTreeMap::new();
        for (e, c) in terms {
            assert_eq!(e.len(), vars.len(), "exponent arity mismatch");
            if c.is_zero() {
                continue;
            }
            let entry = map.entry(e).or_insert_with(Rational::zero);
            *entry += c;
            if entry.is_zero() {
                // remove exact cancellations eagerly
            }
        }
        map.retain(|_, c| !c.is_zero());
        Self { vars, terms: map }
    }

    pub fn constant(vars: VarSet, c: Rational) -> Self {
        let e = vec![0i32; vars.len()];
        Self::from_terms(vars, [(e, c)])
    }

    pub fn monomial(vars: VarSet, exps: Vec<i32>, c: Rational) -> Self {
        Self::from_terms(vars, [(exps, c)])
    }

    pub fn vars(&self) -> &VarSet {
        &self.vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i32>, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Raises to an integer power (negative allowed for monomials).
    pub fn pow(&self, n: i32) -> Self {
        if n == 0 {
            return Self::constant(self.vars.clone(), Rational::one());
        }
        if n < 0 {
            let inv = self.try_inv().expect("negative power of a non-monomial");
            return inv.pow(-n);
        }
        let mut acc = Self::constant(self.vars.clone(), Rational::one());
        let mut base = self.clone();
        let mut e = n as u32;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            e >>= 1;
            if e > 0 {
                base = base.clone() * base;
            }
        }
        acc
    }

    fn same_vars(&self, other: &Self) -> bool {
        self.vars == other.vars
    }

    fn is_constant(&self) -> bool {
        self.terms.is_empty()
            || (self.terms.len() == 1 && self.terms.keys().next().unwrap().iter().all(|&e| e == 0))
    }

    fn constant_value(&self) -> Rational {
        self.terms
            .values()
            .next()
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Aligns two operands onto a common variable set; constants promote freely.
    fn coerce(a: MPoly, b: MPoly) -> (MPoly, MPoly) {
        if a.same_vars(&b) {
            return (a, b);
        }
        if a.is_constant() {
            let c = a.constant_value();
            let p = MPoly::constant(b.vars.clone(), c);
            return (p, b);
        }
        if b.is_constant() {
            let c = b.constant_value();
            let p = MPoly::constant(a.vars.clone(), c);
            return (a, p);
        }
        panic!("variable sets differ; promote explicitly");
    }
}

impl std::ops::Add for MPoly {
    type Output = MPoly;
    fn add(self, rhs: MPoly) -> MPoly {
        let (lhs, rhs) = MPoly::coerce(self, rhs);
        let vars = lhs.vars.clone();
        let mut terms = lhs.terms;
        for (e, c) in rhs.terms {
            let entry = terms.entry(e).or_insert_with(Rational::zero);
            *entry += c;
        }
        terms.retain(|_, c| !c.is_zero());
        MPoly { vars, terms }
    }
}

impl std::ops::Sub for MPoly {
    type Output = MPoly;
    fn sub(self, rhs: MPoly) -> MPoly {
        self + (-rhs)
    }
}

impl std::ops::Neg for MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        MPoly {
            vars: self.vars,
            terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect(),
        }
    }
}

impl std::ops::Mul for MPoly {
    type Output = MPoly;
    fn mul(self, rhs: MPoly) -> MPoly {
        let (lhs, rhs) = MPoly::coerce(self, rhs);
        let vars = lhs.vars.clone();
        let mut terms: BTreeMap<Vec<i32>, Rational> = BTreeMap::new();
        for (e1, c1) in &lhs.terms {
            for (e2, c2) in &rhs.terms {
                let e: Vec<i32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                let c = c1.clone() * c2.clone();
                let entry = terms.entry(e).or_insert_with(Rational::zero);
                *entry += c;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        MPoly { vars, terms }
    }
}

impl Zero for MPoly {
    fn zero() -> Self {
        MPoly { vars: VarSet::new(Vec::<String>::new()), terms: BTreeMap::new() }
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for MPoly {
    fn one() -> Self {
        let vars = VarSet::new(Vec::<String>::new());
        MPoly::constant(vars, Rational::one())
    }
}

impl Scalar for MPoly {
    fn from_rational(r: &Rational) -> Self {
        let vars = VarSet::new(Vec::<String>::new());
        MPoly::constant(vars, r.clone())
    }

    fn try_inv(&self) -> Option<Self> {
        if self.terms.len() != 1 {
            return None;
        }
        let (e, c) = self.terms.iter().next().unwrap();
        let cinv = c.try_inv()?;
        Some(MPoly::monomial(
            self.vars.clone(),
            e.iter().map(|x| -x).collect(),
            cinv,
        ))
    }
}

impl std::fmt::Display for MPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{}", c)?;
            for (i, &k) in e.iter().enumerate() {
                if k != 0 {
                    write!(f, "*{}^{}", self.vars.names()[i], k)?;
                }
            }
        }
        Ok(())
    }
}

/// Promotes a `VarSet`-less constant-style polynomial into `vars`.
pub fn promote_to_vars(p: &MPoly, vars: &VarSet) -> MPoly {
    if p.vars() == vars {
        return p.clone();
    }
    assert!(
        p.vars().is_empty() || p.terms.is_empty(),
        "cannot promote a polynomial with foreign variables"
    );
    let c = p
        .terms
        .iter()
        .next()
        .map(|(_, c)| c.clone())
        .unwrap_or_else(Rational::zero);
    MPoly::constant(vars.clone(), c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat_int;

    #[test]
    fn laurent_monomial_inverse() {
        let vs = VarSet::new(["a", "b"]);
        let m = MPoly::monomial(vs, vec![2, -1], rat_int(3));
        let inv = m.try_inv().unwrap();
        let prod = m * inv;
        assert_eq!(prod.num_terms(), 1);
        let (e, c) = prod.terms().next().unwrap();
        assert_eq!(e, &vec![0, 0]);
        assert_eq!(c, &rat_int(1));
    }

    #[test]
    fn non_monomial_not_invertible() {
        let vs = VarSet::new(["a"]);
        let p = vs.var(0) + MPoly::constant(vs.clone(), rat_int(1));
        assert!(p.try_inv().is_none());
    }
}
