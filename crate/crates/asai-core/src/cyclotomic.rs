//! Exact arithmetic in cyclotomic fields Q(zeta_n).
//!
//! Elements are stored on the power basis `1, zeta, .., zeta^{phi(n)-1}`,
//! reduced modulo the n-th cyclotomic polynomial, so equal elements have
//! identical coefficient vectors. Order-1 elements are plain rationals and
//! promote implicitly; distinct orders > 1 must be promoted explicitly.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use once_cell::sync::Lazy;

use crate::rational::Rational;
use crate::scalar::{FieldScalar, Scalar};

/// phi(n)
pub fn euler_phi(n: u64) -> u64 {
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

fn divisors(n: u64) -> Vec<u64> {
    let mut ds = Vec::new();
    let mut i = 1;
    while i * i <= n {
        if n % i == 0 {
            ds.push(i);
            if i != n / i {
                ds.push(n / i);
            }
        }
        i += 1;
    }
    ds.sort_unstable();
    ds
}

/// Integer coefficients of the n-th cyclotomic polynomial, degree phi(n),
/// computed by exact division of x^n - 1 by the proper-divisor factors.
pub fn cyclotomic_polynomial(n: u64) -> Vec<BigInt> {
    assert!(n >= 1);
    let mut num = vec![BigInt::from(-1)];
    num.extend(std::iter::repeat(BigInt::zero()).take(n as usize - 1));
    num.push(BigInt::one()); // x^n - 1
    let mut poly = num;
    for d in divisors(n) {
        if d == n {
            continue;
        }
        let phi_d = cyclotomic_cached(d);
        poly = exact_div(&poly, &phi_d);
    }
    poly
}

static PHI_CACHE: Lazy<Mutex<HashMap<u64, Arc<Vec<BigInt>>>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

fn cyclotomic_cached(n: u64) -> Arc<Vec<BigInt>> {
    if let Some(p) = PHI_CACHE.lock().unwrap().get(&n) {
        return p.clone();
    }
    let p = Arc::new(cyclotomic_polynomial(n));
    PHI_CACHE.lock().unwrap().insert(n, p.clone());
    p
}

/// Exact division of integer polynomials (monic divisor), ascending coefficients.
fn exact_div(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    assert!(den.last().map_or(false, |c| c.is_one()), "divisor must be monic");
    let mut rem: Vec<BigInt> = num.to_vec();
    let dn = den.len() - 1;
    if rem.len() <= dn {
        assert!(rem.iter().all(|c| c.is_zero()));
        return vec![BigInt::zero()];
    }
    let qn = rem.len() - 1 - dn;
    let mut quo = vec![BigInt::zero(); qn + 1];
    for k in (0..=qn).rev() {
        let c = rem[k + dn].clone();
        quo[k] = c.clone();
        if c.is_zero() {
            continue;
        }
        for (i, dc) in den.iter().enumerate() {
            rem[k + i] -= &c * dc;
        }
    }
    assert!(rem.iter().all(|c| c.is_zero()), "non-exact polynomial division");
    quo
}

/// Shared reduction data for a fixed order n.
struct CycloContext {
    degree: usize,
    /// rows[k] = coefficients of zeta^{degree + k} on the power basis;
    /// covers every exponent needed by multiplication and embedding
    rows: Vec<Vec<Rational>>,
}

impl CycloContext {
    fn new(n: u64) -> Self {
        let phi = cyclotomic_cached(n);
        let degree = phi.len() - 1;
        // zeta^degree = -(phi_0 + phi_1 zeta + ..), phi monic
        let top_exponent = (2 * degree - 2).max(n as usize - 1);
        let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(top_exponent - degree + 1);
        let base: Vec<Rational> = (0..degree)
            .map(|i| -Rational::from_integer(phi[i].clone()))
            .collect();
        rows.push(base);
        for k in 1..=(top_exponent - degree) {
            let prev = rows[k - 1].clone();
            // multiply by zeta: shift then reduce the overflow term
            let mut next = vec![Rational::zero(); degree];
            let top = prev[degree - 1].clone();
            for i in (1..degree).rev() {
                next[i] = prev[i - 1].clone();
            }
            if !top.is_zero() {
                for i in 0..degree {
                    next[i] += top.clone() * rows[0][i].clone();
                }
            }
            rows.push(next);
        }
        Self { degree, rows }
    }

    /// Canonical coefficient vector of zeta_n^k (0 <= k < n) at this order.
    fn basis_vector(&self, k: usize) -> Vec<Rational> {
        if k < self.degree {
            let mut v = vec![Rational::zero(); self.degree];
            v[k] = Rational::one();
            v
        } else {
            self.rows[k - self.degree].clone()
        }
    }
}

static CTX_CACHE: Lazy<Mutex<HashMap<u64, Arc<CycloContext>>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

fn context(n: u64) -> Arc<CycloContext> {
    if let Some(c) = CTX_CACHE.lock().unwrap().get(&n) {
        return c.clone();
    }
    let c = Arc::new(CycloContext::new(n));
    CTX_CACHE.lock().unwrap().insert(n, c.clone());
    c
}

/// An element of Q(zeta_n) in canonical (reduced) form.
#[derive(Clone, Debug)]
pub struct Cyclotomic {
    order: u64,
    /// length = phi(order); order 1 means a plain rational in coeffs[0]
    coeffs: Vec<Rational>,
}

impl Cyclotomic {
    pub fn rational(r: Rational) -> Self {
        Self { order: 1, coeffs: vec![r] }
    }

    /// zeta_n^k, reduced.
    pub fn root_of_unity(n: u64, k: i64) -> Self {
        assert!(n >= 1);
        let k = k.rem_euclid(n as i64) as u64;
        if n == 1 || k == 0 {
            return Self::rational(Rational::one());
        }
        // reduce order: zeta_n^k is a primitive root of order n/gcd(n,k)
        let g = num_integer::gcd(n, k);
        let (n, k) = (n / g, k / g);
        if n == 1 {
            return Self::rational(Rational::one());
        }
        if n == 2 {
            return Self::rational(-Rational::one());
        }
        let ctx = context(n);
        Self { order: n, coeffs: ctx.basis_vector(k as usize) }
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_rational(&self) -> Option<Rational> {
        if self.order == 1 {
            return Some(self.coeffs[0].clone());
        }
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            return Some(self.coeffs[0].clone());
        }
        None
    }

    /// Embeds into Q(zeta_m); requires `order | m`.
    pub fn promote(&self, m: u64) -> Self {
        assert!(m % self.order == 0, "promotion target must be a multiple of the order");
        if m == self.order {
            return self.clone();
        }
        if m == 1 {
            return self.clone();
        }
        let ctx = context(m);
        let step = (m / self.order) as usize;
        let mut out = vec![Rational::zero(); ctx.degree];
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let basis = ctx.basis_vector((step * i) % m as usize);
            for (o, b) in out.iter_mut().zip(basis) {
                *o += c * &b;
            }
        }
        Self { order: m, coeffs: out }
    }

    fn zero_of(n: u64) -> Self {
        if n == 1 {
            return Self::rational(Rational::zero());
        }
        let ctx = context(n);
        Self { order: n, coeffs: vec![Rational::zero(); ctx.degree] }
    }

    fn scale(&self, c: &Rational) -> Self {
        Self {
            order: self.order,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    fn align(a: &Self, b: &Self) -> (Self, Self) {
        if a.order == b.order {
            return (a.clone(), b.clone());
        }
        let m = num_integer::lcm(a.order, b.order);
        (a.promote(m), b.promote(m))
    }

    pub fn add(&self, other: &Self) -> Self {
        let (a, b) = Self::align(self, other);
        Self {
            order: a.order,
            coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg_val())
    }

    fn neg_val(&self) -> Self {
        Self { order: self.order, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (a, b) = Self::align(self, other);
        if a.order == 1 {
            return Self::rational(a.coeffs[0].clone() * b.coeffs[0].clone());
        }
        let ctx = context(a.order);
        let d = ctx.degree;
        let mut raw = vec![Rational::zero(); 2 * d - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                raw[i + j] += x * y;
            }
        }
        let mut out = raw[..d].to_vec();
        for k in d..(2 * d - 1) {
            if raw[k].is_zero() {
                continue;
            }
            for i in 0..d {
                let add = raw[k].clone() * ctx.rows[k - d][i].clone();
                out[i] += add;
            }
        }
        Self { order: a.order, coeffs: out }
    }

    /// Galois action zeta -> zeta^k for gcd(k, order) = 1.
    pub fn galois(&self, k: i64) -> Self {
        if self.order == 1 {
            return self.clone();
        }
        let n = self.order;
        let kk = k.rem_euclid(n as i64) as u64;
        assert_eq!(num_integer::gcd(kk, n), 1, "galois exponent must be coprime to the order");
        let mut acc = Self::zero_of(n);
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            acc = acc.add(&Self::root_of_unity(n, (kk as i64) * (i as i64)).scale(c));
        }
        acc
    }

    /// Complex conjugation zeta -> zeta^{-1}.
    pub fn conj(&self) -> Self {
        self.galois(-1)
    }

    /// Inverse via the extended Euclidean algorithm modulo the cyclotomic polynomial.
    pub fn try_inverse(&self) -> Option<Self> {
        if let Some(r) = self.is_rational() {
            return r.try_inv().map(Self::rational);
        }
        let ctx = context(self.order);
        let phi: Vec<Rational> = {
            let p = cyclotomic_cached(self.order);
            p.iter().map(|c| Rational::from_integer(c.clone())).collect()
        };
        let (g, _, inv) = poly_xgcd(&phi, &self.coeffs);
        // g is a nonzero constant because phi is irreducible and self != 0
        let g0 = g.first()?.clone();
        if g.len() != 1 || g0.is_zero() {
            return None;
        }
        let ginv = g0.try_inv()?;
        let mut coeffs: Vec<Rational> =
            inv.iter().map(|c| c * ginv.clone()).collect();
        assert!(coeffs.len() <= ctx.degree, "xgcd cofactor exceeds field degree");
        coeffs.resize(ctx.degree, Rational::zero());
        Some(Self { order: self.order, coeffs })
    }

    /// Numerical embedding sending zeta_n to exp(2 pi i / n).
    pub fn to_complex(&self) -> (f64, f64) {
        if self.order == 1 {
            return (crate::rational::to_f64(&self.coeffs[0]), 0.0);
        }
        let n = self.order as f64;
        let (mut re, mut im) = (0.0, 0.0);
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let t = 2.0 * std::f64::consts::PI * (j as f64) / n;
            let cf = crate::rational::to_f64(c);
            re += cf * t.cos();
            im += cf * t.sin();
        }
        (re, im)
    }
}

/// Extended gcd of polynomials over Q (ascending coefficients):
/// returns (g, u, v) with u*a + v*b = g.
fn poly_xgcd(
    a: &[Rational],
    b: &[Rational],
) -> (Vec<Rational>, Vec<Rational>, Vec<Rational>) {
    fn trim(mut v: Vec<Rational>) -> Vec<Rational> {
        while v.last().map_or(false, |c| c.is_zero()) {
            v.pop();
        }
        v
    }
    fn sub_scaled(a: &[Rational], b: &[Rational], c: &Rational, shift: usize) -> Vec<Rational> {
        let mut out = a.to_vec();
        if out.len() < b.len() + shift {
            out.resize(b.len() + shift, Rational::zero());
        }
        for (i, bc) in b.iter().enumerate() {
            out[i + shift] -= bc * c;
        }
        trim(out)
    }
    let mut r0 = trim(a.to_vec());
    let mut r1 = trim(b.to_vec());
    let mut u0: Vec<Rational> = vec![Rational::one()];
    let mut u1: Vec<Rational> = vec![];
    let mut v0: Vec<Rational> = vec![];
    let mut v1: Vec<Rational> = vec![Rational::one()];
    while !r1.is_empty() {
        // divide r0 by r1
        let mut rem = r0.clone();
        let mut qu: Vec<(Rational, usize)> = Vec::new();
        let lead = r1.last().unwrap().clone();
        let leadinv = Rational::one() / lead;
        while rem.len() >= r1.len() && !rem.is_empty() {
            let shift = rem.len() - r1.len();
            let c = rem.last().unwrap().clone() * leadinv.clone();
            qu.push((c.clone(), shift));
            rem = sub_scaled(&rem, &r1, &c, shift);
        }
        // new u, v: u0 - q*u1, v0 - q*v1
        let mut nu = u0.clone();
        let mut nv = v0.clone();
        for (c, s) in &qu {
            nu = sub_scaled(&nu, &u1, c, *s);
            nv = sub_scaled(&nv, &v1, c, *s);
        }
        r0 = r1;
        r1 = rem;
        u0 = u1;
        u1 = nu;
        v0 = v1;
        v1 = nv;
    }
    (r0, u0, v0)
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        match (self.is_rational(), other.is_rational()) {
            (Some(a), Some(b)) => a == b,
            (Some(_), None) | (None, Some(_)) => false,
            (None, None) => {
                if self.order == other.order {
                    return self.coeffs == other.coeffs;
                }
                // compare at a common order; embeddings are canonical
                let (a, b) = Cyclotomic::align(self, other);
                a.coeffs == b.coeffs
            }
        }
    }
}

impl std::ops::Add for Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: Cyclotomic) -> Cyclotomic {
        Cyclotomic::add(&self, &rhs)
    }
}

impl std::ops::Sub for Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: Cyclotomic) -> Cyclotomic {
        Cyclotomic::sub(&self, &rhs)
    }
}

impl std::ops::Mul for Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: Cyclotomic) -> Cyclotomic {
        Cyclotomic::mul(&self, &rhs)
    }
}

impl std::ops::Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        self.neg_val()
    }
}

impl Zero for Cyclotomic {
    fn zero() -> Self {
        Cyclotomic::rational(Rational::zero())
    }
    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }
}

impl One for Cyclotomic {
    fn one() -> Self {
        Cyclotomic::rational(Rational::one())
    }
}

impl Scalar for Cyclotomic {
    fn from_rational(r: &Rational) -> Self {
        Cyclotomic::rational(r.clone())
    }
    fn try_inv(&self) -> Option<Self> {
        self.try_inverse()
    }
}

impl FieldScalar for Cyclotomic {}

impl std::fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if let Some(r) = self.is_rational() {
            return write!(f, "{}", r);
        }
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if j == 0 {
                write!(f, "{}", c)?;
            } else if c.is_one() {
                write!(f, "zeta_{}^{}", self.order, j)?;
            } else {
                write!(f, "{}*zeta_{}^{}", c, self.order, j)?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat_int;

    #[test]
    fn phi_polynomials() {
        // Phi_12 = x^4 - x^2 + 1
        let p = cyclotomic_polynomial(12);
        let want: Vec<BigInt> =
            [1, 0, -1, 0, 1].iter().map(|&c| BigInt::from(c)).collect();
        assert_eq!(p, want);
        assert_eq!(cyclotomic_polynomial(5).len(), 5);
    }

    #[test]
    fn primitive_root_relations() {
        // 1 + zeta_3 + zeta_3^2 = 0
        let z = Cyclotomic::root_of_unity(3, 1);
        let s = Cyclotomic::one().add(&z).add(&z.mul(&z));
        assert!(s.is_zero());
    }

    #[test]
    fn sixth_root_square() {
        // zeta_6 satisfies x^2 - x + 1 = 0
        let z = Cyclotomic::root_of_unity(6, 1);
        let lhs = z.mul(&z).sub(&z).add(&Cyclotomic::one());
        assert!(lhs.is_zero());
    }

    #[test]
    fn inverse_roundtrip() {
        let x = Cyclotomic::root_of_unity(5, 2)
            .add(&Cyclotomic::rational(rat_int(3)));
        let inv = x.try_inverse().unwrap();
        assert_eq!(x.mul(&inv), Cyclotomic::one());
    }

    #[test]
    fn conjugation_is_involution() {
        let x = Cyclotomic::root_of_unity(7, 3)
            .add(&Cyclotomic::root_of_unity(7, 1).scale(&rat_int(2)));
        assert_eq!(x.conj().conj(), x);
    }

    #[test]
    fn complex_embedding_respects_multiplication() {
        let x = Cyclotomic::root_of_unity(12, 5).add(&Cyclotomic::rational(rat_int(1)));
        let y = Cyclotomic::root_of_unity(12, 7).sub(&Cyclotomic::rational(rat_int(2)));
        let (xr, xi) = x.to_complex();
        let (yr, yi) = y.to_complex();
        let (pr, pi) = x.mul(&y).to_complex();
        assert!((pr - (xr * yr - xi * yi)).abs() < 1e-12);
        assert!((pi - (xr * yi + xi * yr)).abs() < 1e-12);
    }
}
