//! Hilbert eigenform data: fixture ingestion, prime splitting, Hecke
//! multiplicativity, Satake parameters, ordinarity and p-stabilisation.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::cyclotomic::Cyclotomic;
use crate::mpoly::{MPoly, VarSet};
use crate::padic::{mod_inverse, PAdicInt};
use crate::rational::{parse_rational, vp_rational, Rational};
use crate::scalar::Scalar;

#[derive(Debug, Error, PartialEq)]
pub enum HilbertError {
    #[error("schema violation: {0}")]
    Schema(String),
    #[error("non-paritious weight")]
    NonParitiousWeight,
    #[error("incomplete eigenvalue table")]
    IncompleteEigenvalues,
    #[error("invalid discriminant")]
    InvalidDiscriminant,
    #[error("non-ordinary at p1")]
    NonOrdinary,
    #[error("insufficient eigenvalue coverage (need primes up to {0})")]
    Coverage(u64),
    #[error("central character inconsistent at ell = {0}")]
    CharacterMismatch(u64),
    #[error("numeric evaluation requires numeric eigenvalues")]
    SymbolicValue,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SplittingType {
    Split,
    Inert,
    Ramified,
}

/// Legendre symbol (a|p) for odd prime p.
fn legendre(a: i64, p: u64) -> i32 {
    let a = a.rem_euclid(p as i64) as u64;
    if a == 0 {
        return 0;
    }
    let mut acc: u128 = 1;
    let mut b = a as u128;
    let mut e = (p - 1) / 2;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p as u128;
        }
        b = b * b % p as u128;
        e >>= 1;
    }
    if acc == 1 {
        1
    } else {
        -1
    }
}

fn is_squarefree(mut n: u64) -> bool {
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return false;
            }
        }
        p += 1;
    }
    true
}

pub fn is_fundamental_discriminant(d: i64) -> bool {
    if d <= 1 {
        return false;
    }
    let d = d as u64;
    if d % 4 == 1 {
        is_squarefree(d)
    } else if d % 4 == 0 {
        let m = d / 4;
        (m % 4 == 2 || m % 4 == 3) && is_squarefree(m)
    } else {
        false
    }
}

/// Splitting of the rational prime ell in Q(sqrt(D)), via the Kronecker symbol.
pub fn prime_splitting(d: i64, ell: u64) -> Result<SplittingType, HilbertError> {
    if !is_fundamental_discriminant(d) {
        return Err(HilbertError::InvalidDiscriminant);
    }
    let sym = if ell == 2 {
        if d % 2 == 0 {
            0
        } else {
            match d.rem_euclid(8) {
                1 => 1,
                5 => -1,
                _ => unreachable!("odd fundamental discriminants are 1 mod 4"),
            }
        }
    } else {
        legendre(d, ell)
    };
    Ok(match sym {
        1 => SplittingType::Split,
        -1 => SplittingType::Inert,
        _ => SplittingType::Ramified,
    })
}

/// An exact algebraic literal: rational, cyclotomic, or a named indeterminate.
#[derive(Clone, Debug, PartialEq)]
pub enum AlgValue {
    Rat(Rational),
    Cyc(Cyclotomic),
    Sym(String),
}

impl AlgValue {
    pub fn is_symbolic(&self) -> bool {
        matches!(self, AlgValue::Sym(_))
    }

    pub fn to_cyclotomic(&self) -> Result<Cyclotomic, HilbertError> {
        match self {
            AlgValue::Rat(r) => Ok(Cyclotomic::rational(r.clone())),
            AlgValue::Cyc(c) => Ok(c.clone()),
            AlgValue::Sym(_) => Err(HilbertError::SymbolicValue),
        }
    }

    pub fn to_mpoly(&self, vars: &VarSet) -> Result<MPoly, HilbertError> {
        match self {
            AlgValue::Rat(r) => Ok(MPoly::constant(vars.clone(), r.clone())),
            AlgValue::Sym(name) => {
                let idx = vars
                    .names()
                    .iter()
                    .position(|v| v == name)
                    .ok_or_else(|| HilbertError::Schema(format!("unknown symbol {name}")))?;
                Ok(vars.var(idx))
            }
            AlgValue::Cyc(_) => Err(HilbertError::Schema(
                "cyclotomic values are not supported in symbolic mode".into(),
            )),
        }
    }
}

/// Parses literals like `-3/2`, `zeta_12^5`, `1/2*zeta_8 - zeta_8^3 + 2`, `a1`.
pub fn parse_alg_value(s: &str) -> Result<AlgValue, HilbertError> {
    let s = s.trim();
    if s.is_empty() {
        return Err(HilbertError::Schema("empty value literal".into()));
    }
    // plain symbol: starts with a letter and is not a zeta literal
    if !s.contains("zeta_")
        && s.chars().next().unwrap().is_ascii_alphabetic()
        && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
    {
        return Ok(AlgValue::Sym(s.to_string()));
    }
    if !s.contains("zeta_") {
        let r = parse_rational(s)
            .ok_or_else(|| HilbertError::Schema(format!("bad rational literal: {s}")))?;
        return Ok(AlgValue::Rat(r));
    }
    // split into +/- separated terms (minding leading sign)
    let mut terms: Vec<(i32, String)> = Vec::new();
    let mut cur = String::new();
    let mut sign = 1;
    for (i, ch) in s.chars().enumerate() {
        if (ch == '+' || ch == '-') && i > 0 && !cur.trim().is_empty() {
            terms.push((sign, cur.trim().to_string()));
            sign = if ch == '-' { -1 } else { 1 };
            cur = String::new();
        } else if ch == '-' && i == 0 {
            sign = -1;
        } else if ch == '+' && i == 0 {
        } else {
            cur.push(ch);
        }
    }
    if !cur.trim().is_empty() {
        terms.push((sign, cur.trim().to_string()));
    }
    let mut acc = Cyclotomic::rational(Rational::zero());
    let mut max_order = 1u64;
    let mut parsed: Vec<(Rational, Option<(u64, i64)>)> = Vec::new();
    for (sg, t) in &terms {
        let (coef, zeta) = if let Some((c, z)) = t.split_once('*') {
            (
                parse_rational(c)
                    .ok_or_else(|| HilbertError::Schema(format!("bad coefficient in {t}")))?,
                Some(z.trim()),
            )
        } else if t.starts_with("zeta_") {
            (Rational::one(), Some(t.as_str()))
        } else {
            (
                parse_rational(t)
                    .ok_or_else(|| HilbertError::Schema(format!("bad term {t}")))?,
                None,
            )
        };
        let coef = if *sg < 0 { -coef } else { coef };
        let z = match zeta {
            None => None,
            Some(z) => {
                let rest = z
                    .strip_prefix("zeta_")
                    .ok_or_else(|| HilbertError::Schema(format!("bad zeta literal {z}")))?;
                let (n, k) = match rest.split_once('^') {
                    Some((n, k)) => (
                        n.parse::<u64>()
                            .map_err(|_| HilbertError::Schema(format!("bad order in {z}")))?,
                        k.parse::<i64>()
                            .map_err(|_| HilbertError::Schema(format!("bad power in {z}")))?,
                    ),
                    None => (
                        rest.parse::<u64>()
                            .map_err(|_| HilbertError::Schema(format!("bad order in {z}")))?,
                        1,
                    ),
                };
                max_order = num_integer::lcm(max_order, n);
                Some((n, k))
            }
        };
        parsed.push((coef, z));
    }
    for (coef, z) in parsed {
        let term = match z {
            None => Cyclotomic::rational(coef),
            Some((n, k)) => {
                let root = Cyclotomic::root_of_unity(n, k).promote_if_needed(max_order);
                root.mul_rational(&coef)
            }
        };
        acc = acc.promote_if_needed(max_order).add(&term);
    }
    if let Some(r) = acc.is_rational() {
        return Ok(AlgValue::Rat(r));
    }
    Ok(AlgValue::Cyc(acc))
}

impl Cyclotomic {
    fn promote_if_needed(&self, m: u64) -> Cyclotomic {
        if self.order() == m || self.order() == 1 {
            self.clone()
        } else {
            self.promote(num_integer::lcm(self.order(), m))
        }
    }

    fn mul_rational(&self, r: &Rational) -> Cyclotomic {
        self.mul(&Cyclotomic::rational(r.clone()))
    }
}

/// A prime-ideal label: the rational prime and a component index (1 for
/// inert/ramified primes; 1 or 2 for the two primes above a split prime).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct IdealLabel {
    pub ell: u64,
    pub index: u8,
}

#[derive(Clone, Debug)]
pub struct HilbertEigenform {
    pub label: String,
    pub d: i64,
    pub weight: (u32, u32),
    pub level_norm: u64,
    pub chi_rational: crate::dirichlet::DirichletCharacter,
    pub chi_on_primes: BTreeMap<IdealLabel, AlgValue>,
    pub eigenvalues: BTreeMap<IdealLabel, AlgValue>,
    pub coverage_bound: u64,
}

impl HilbertEigenform {
    pub fn splitting(&self, ell: u64) -> SplittingType {
        prime_splitting(self.d, ell).expect("validated at ingestion")
    }

    pub fn is_symbolic(&self) -> bool {
        self.eigenvalues.values().any(|v| v.is_symbolic())
    }

    pub fn eigenvalue(&self, ell: u64, index: u8) -> Option<&AlgValue> {
        self.eigenvalues.get(&IdealLabel { ell, index })
    }

    pub fn chi_at(&self, ell: u64, index: u8) -> Option<&AlgValue> {
        self.chi_on_primes.get(&IdealLabel { ell, index })
    }

    /// Primes required to cover all ideals above rational primes <= bound.
    pub fn check_coverage(&self, bound: u64) -> Result<(), HilbertError> {
        if self.coverage_bound < bound {
            return Err(HilbertError::Coverage(bound));
        }
        Ok(())
    }
}

fn get_str<'a>(v: &'a serde_json::Value, key: &str) -> Result<&'a str, HilbertError> {
    v.get(key)
        .and_then(|x| x.as_str())
        .ok_or_else(|| HilbertError::Schema(format!("missing string field `{key}`")))
}

fn get_u64(v: &serde_json::Value, key: &str) -> Result<u64, HilbertError> {
    get_str(v, key)?
        .parse()
        .map_err(|_| HilbertError::Schema(format!("field `{key}` is not a decimal integer")))
}

/// Parses and validates a fixture document (canonical JSON with integers as
/// decimal strings).
pub fn ingest_fixture(document: &str) -> Result<HilbertEigenform, HilbertError> {
    let v: serde_json::Value = serde_json::from_str(document)
        .map_err(|e| HilbertError::Schema(format!("invalid JSON: {e}")))?;
    let label = get_str(&v, "label")?.to_string();
    let d = get_str(&v, "D")?
        .parse::<i64>()
        .map_err(|_| HilbertError::Schema("field `D` is not an integer".into()))?;
    if !is_fundamental_discriminant(d) {
        return Err(HilbertError::InvalidDiscriminant);
    }
    let weight = v
        .get("weight")
        .and_then(|w| w.as_array())
        .ok_or_else(|| HilbertError::Schema("missing array `weight`".into()))?;
    if weight.len() != 2 {
        return Err(HilbertError::Schema("weight must have two entries".into()));
    }
    let k1: u32 = weight[0]
        .as_str()
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| HilbertError::Schema("bad weight entry".into()))?;
    let k2: u32 = weight[1]
        .as_str()
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| HilbertError::Schema("bad weight entry".into()))?;
    if k1 % 2 != k2 % 2 {
        return Err(HilbertError::NonParitiousWeight);
    }
    let level_norm = get_u64(&v, "level_norm")?;
    let chi = v
        .get("chi_rational")
        .ok_or_else(|| HilbertError::Schema("missing `chi_rational`".into()))?;
    let chi_mod = get_u64(chi, "modulus")?;
    let gen_vals = chi
        .get("generator_values")
        .and_then(|g| g.as_array())
        .ok_or_else(|| HilbertError::Schema("missing `generator_values`".into()))?;
    let exps: Vec<u64> = gen_vals
        .iter()
        .map(|g| {
            g.as_str()
                .and_then(|s| s.parse::<u64>().ok())
                .ok_or_else(|| HilbertError::Schema("bad generator value".into()))
        })
        .collect::<Result<_, _>>()?;
    let chi_rational = crate::dirichlet::DirichletCharacter::from_generator_exponents(
        chi_mod, &exps,
    )
    .map_err(|e| HilbertError::Schema(e.to_string()))?;

    let coverage_bound = get_u64(&v, "coverage_bound")?;

    let mut eigenvalues = BTreeMap::new();
    for entry in v
        .get("eigenvalues")
        .and_then(|e| e.as_array())
        .ok_or_else(|| HilbertError::Schema("missing `eigenvalues`".into()))?
    {
        let ell = get_u64(entry, "ell")?;
        let index = entry
            .get("index")
            .and_then(|i| i.as_u64())
            .ok_or_else(|| HilbertError::Schema("missing eigenvalue index".into()))?
            as u8;
        let value = parse_alg_value(get_str(entry, "value")?)?;
        eigenvalues.insert(IdealLabel { ell, index }, value);
    }
    let mut chi_on_primes = BTreeMap::new();
    for entry in v
        .get("chi_on_primes")
        .and_then(|e| e.as_array())
        .unwrap_or(&vec![])
    {
        let ell = get_u64(entry, "ell")?;
        let index = entry
            .get("index")
            .and_then(|i| i.as_u64())
            .ok_or_else(|| HilbertError::Schema("missing chi index".into()))? as u8;
        let value = parse_alg_value(get_str(entry, "value")?)?;
        chi_on_primes.insert(IdealLabel { ell, index }, value);
    }

    let form = HilbertEigenform {
        label,
        d,
        weight: (k1, k2),
        level_norm,
        chi_rational,
        chi_on_primes,
        eigenvalues,
        coverage_bound,
    };

    // completeness: every prime <= coverage_bound has entries for all its ideals
    let mut ell = 2u64;
    while ell <= form.coverage_bound {
        if is_prime(ell) {
            let split = prime_splitting(form.d, ell)?;
            let need: &[u8] = match split {
                SplittingType::Split => &[1, 2],
                _ => &[1],
            };
            for &idx in need {
                if form.eigenvalue(ell, idx).is_none() {
                    return Err(HilbertError::IncompleteEigenvalues);
                }
                if form.chi_at(ell, idx).is_none() {
                    return Err(HilbertError::IncompleteEigenvalues);
                }
            }
            // forbid stray second entries at non-split primes
            if split != SplittingType::Split && form.eigenvalue(ell, 2).is_some() {
                return Err(HilbertError::Schema(format!(
                    "prime {ell} is not split but carries two entries"
                )));
            }
        }
        ell += 1;
    }
    Ok(form)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            return false;
        }
        p += 1;
    }
    true
}

/// Hecke eigenvalue at a prime power by the standard recursion
/// `a_{P^{r+1}} = a_P a_{P^r} - chi(P) a_{P^{r-1}}`.
pub fn hecke_prime_power<T: Scalar>(a: &T, chi_p: &T, r: u32) -> T {
    if r == 0 {
        return T::one();
    }
    let mut prev = T::one();
    let mut cur = a.clone();
    for _ in 1..r {
        let next = a.clone() * cur.clone() - chi_p.clone() * prev.clone();
        prev = cur;
        cur = next;
    }
    cur
}

/// Roots of `X^2 - a X + chi`: explicit when the discriminant is a rational
/// square or the roots are recognisable roots of unity, symbolic (conjugate
/// pair in the quadratic extension) otherwise.
#[derive(Clone, Debug, PartialEq)]
pub enum SatakePair {
    Rational(Rational, Rational),
    Cyclotomic(Cyclotomic, Cyclotomic),
    /// Conjugate pair alpha, beta with alpha+beta = sum, alpha*beta = prod,
    /// (alpha-beta)^2 = disc (not a square in the base field).
    Conjugate { sum: Rational, prod: Rational, disc: Rational },
}

impl SatakePair {
    pub fn sum_cyclotomic(&self) -> Cyclotomic {
        match self {
            SatakePair::Rational(a, b) => Cyclotomic::rational(a.clone() + b.clone()),
            SatakePair::Cyclotomic(a, b) => a.add(b),
            SatakePair::Conjugate { sum, .. } => Cyclotomic::rational(sum.clone()),
        }
    }

    pub fn prod_cyclotomic(&self) -> Cyclotomic {
        match self {
            SatakePair::Rational(a, b) => Cyclotomic::rational(a.clone() * b.clone()),
            SatakePair::Cyclotomic(a, b) => a.mul(b),
            SatakePair::Conjugate { prod, .. } => Cyclotomic::rational(prod.clone()),
        }
    }
}

fn rational_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    let cand = Rational::new(n, d);
    if &cand * &cand == *r {
        Some(cand)
    } else {
        None
    }
}

/// Satake parameters: the unordered root pair of `X^2 - a X + chi`.
pub fn satake(a: &Rational, chi: &Rational) -> SatakePair {
    let disc = a * a - Rational::from_integer(4.into()) * chi;
    if let Some(s) = rational_sqrt(&disc) {
        let two = Rational::from_integer(2.into());
        return SatakePair::Rational((a + &s) / &two, (a - &s) / &two);
    }
    // roots of unity arise for disc = -c^2 (4th roots) and disc = -3 c^2 (6th)
    let neg = -disc.clone();
    if let Some(c) = rational_sqrt(&neg) {
        // roots (a +- c i)/2: lie in Q(zeta_4) when a = 0, c gives +-i scale
        let half = Rational::new(1.into(), 2.into());
        let re = Cyclotomic::rational(a * &half);
        let im_unit = Cyclotomic::root_of_unity(4, 1); // i
        let im = im_unit.mul(&Cyclotomic::rational(c * half));
        return SatakePair::Cyclotomic(re.add(&im), re.sub(&im));
    }
    let third = -disc.clone() / Rational::from_integer(3.into());
    if let Some(c) = rational_sqrt(&third) {
        // roots (a +- c sqrt(-3))/2 with sqrt(-3) = 2 zeta_6 - 1
        let half = Rational::new(1.into(), 2.into());
        let sqrt_m3 = Cyclotomic::root_of_unity(6, 1)
            .mul(&Cyclotomic::rational(Rational::from_integer(2.into())))
            .sub(&Cyclotomic::rational(Rational::one()));
        let re = Cyclotomic::rational(a * &half);
        let im = sqrt_m3.mul(&Cyclotomic::rational(c * half));
        return SatakePair::Cyclotomic(re.add(&im), re.sub(&im));
    }
    SatakePair::Conjugate { sum: a.clone(), prod: chi.clone(), disc }
}

/// Ordinary p-stabilisation: the unit root alpha_1 and complementary root
/// beta_1 of `X^2 - a_p X + chi(p) p^{k1-1}` modulo p^M.
pub fn p_stabilize(
    a_p: &Rational,
    chi_p: &Rational,
    p: u64,
    k1: u32,
    precision: u32,
) -> Result<(PAdicInt, PAdicInt), HilbertError> {
    assert!(k1 >= 2, "weight-one stabilisation is not supported");
    let va = vp_rational(a_p, p).unwrap_or(i64::MAX);
    if va > 0 {
        return Err(HilbertError::NonOrdinary);
    }
    if va < 0 || vp_rational(chi_p, p).map_or(false, |v| v < 0) {
        return Err(HilbertError::Schema("inputs must be p-integral".into()));
    }
    let modulus = BigUint::from(p).pow(precision);
    let to_residue = |r: &Rational| -> BigUint {
        let num = r.numer();
        let den = r.denom();
        let m = num_bigint::BigInt::from(modulus.clone());
        let n = ((num % &m) + &m) % &m;
        let dinv = mod_inverse(&den.to_biguint().unwrap(), &modulus).unwrap();
        (n.to_biguint().unwrap() * dinv) % &modulus
    };
    let a = to_residue(a_p);
    let c = {
        let pk = Rational::from_integer(num_bigint::BigInt::from(p).pow(k1 - 1));
        to_residue(&(chi_p * &pk))
    };
    // Newton iteration from the unit root of X^2 - aX mod p (that root is a mod p)
    let mut r = &a % BigUint::from(p);
    let mut cur = BigUint::from(p);
    while cur < modulus {
        cur = (&cur * &cur).min(modulus.clone());
        // f(r) = r^2 - a r + c ; f'(r) = 2r - a (a unit since r = a != 0 mod p)
        let r2 = (&r * &r) % &cur;
        let ar = ((&a % &cur) * &r) % &cur;
        let f = ((r2 + &cur - ar) + (&c % &cur)) % &cur;
        let fp = ((BigUint::from(2u32) * &r) % &cur + &cur - (&a % &cur)) % &cur;
        let fpinv = mod_inverse(&fp, &cur).ok_or(HilbertError::NonOrdinary)?;
        r = (&r + &cur - (f * fpinv) % &cur) % &cur;
    }
    let alpha = PAdicInt::new(p, precision, &r);
    // beta = a - alpha (so alpha*beta = c and alpha+beta = a mod p^M)
    let beta_res = ((&a % &modulus) + &modulus - alpha.residue()) % &modulus;
    let beta = PAdicInt::new(p, precision, &beta_res);
    Ok((alpha, beta))
}

pub fn factorize(n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut m = n;
    let mut p = 2u64;
    while p * p <= m {
        if m % p == 0 {
            let mut e = 0;
            while m % p == 0 {
                m /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p = if p == 2 { 3 } else { p + 2 };
    }
    if m > 1 {
        out.push((m, 1));
    }
    out
}

/// Hecke eigenvalue at the ideal `n O_F` for a positive integer n whose prime
/// factors all lie below the coverage bound, computed over a scalar domain.
pub fn eigenvalue_at_n_of<T: Scalar>(
    form: &HilbertEigenform,
    n: u64,
    lift: &impl Fn(&AlgValue) -> Result<T, HilbertError>,
) -> Result<T, HilbertError> {
    let mut acc = T::one();
    for (p, e) in factorize(n) {
        form.check_coverage(p)?;
        let fetch = |idx: u8| -> Result<(T, T), HilbertError> {
            let a = lift(form.eigenvalue(p, idx).ok_or(HilbertError::IncompleteEigenvalues)?)?;
            let c = lift(form.chi_at(p, idx).ok_or(HilbertError::IncompleteEigenvalues)?)?;
            Ok((a, c))
        };
        let local: T = match form.splitting(p) {
            SplittingType::Split => {
                let (a1, c1) = fetch(1)?;
                let (a2, c2) = fetch(2)?;
                hecke_prime_power(&a1, &c1, e) * hecke_prime_power(&a2, &c2, e)
            }
            SplittingType::Inert => {
                let (a, c) = fetch(1)?;
                hecke_prime_power(&a, &c, e)
            }
            SplittingType::Ramified => {
                // ell O_F = P^2, so ell^e O_F = P^{2e}
                let (a, c) = fetch(1)?;
                hecke_prime_power(&a, &c, 2 * e)
            }
        };
        acc = acc * local;
    }
    Ok(acc)
}

/// Dirichlet coefficients of the imprimitive Asai series in analytic
/// normalisation: the coefficients of `L(chi_Q, 2s) * sum a_{n O_F} n^{-s}`.
pub fn asai_dirichlet_coefficients<T: Scalar>(
    form: &HilbertEigenform,
    n_max: u64,
    lift: &impl Fn(&AlgValue) -> Result<T, HilbertError>,
    chi_q: &impl Fn(u64) -> T,
) -> Result<Vec<T>, HilbertError> {
    // index 0 unused; c[n] for 1 <= n <= n_max
    let mut base = vec![T::zero(); (n_max + 1) as usize];
    for n in 1..=n_max {
        base[n as usize] = eigenvalue_at_n_of(form, n, lift)?;
    }
    let mut out = vec![T::zero(); (n_max + 1) as usize];
    for m in 1..=n_max {
        let m2 = m * m;
        if m2 > n_max {
            break;
        }
        let cm = chi_q(m);
        if cm.is_zero() {
            continue;
        }
        for k in 1..=(n_max / m2) {
            let idx = (m2 * k) as usize;
            out[idx] = out[idx].clone() + cm.clone() * base[k as usize].clone();
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int};

    #[test]
    fn splitting_for_d5() {
        assert_eq!(prime_splitting(5, 5).unwrap(), SplittingType::Ramified);
        assert_eq!(prime_splitting(5, 11).unwrap(), SplittingType::Split);
        assert_eq!(prime_splitting(5, 2).unwrap(), SplittingType::Inert);
        assert_eq!(prime_splitting(12, 3).unwrap(), SplittingType::Ramified);
        assert!(prime_splitting(10, 3).is_err());
    }

    #[test]
    fn hecke_recursion_values() {
        assert_eq!(hecke_prime_power(&rat_int(2), &rat_int(1), 0), rat_int(1));
        assert_eq!(hecke_prime_power(&rat_int(2), &rat_int(1), 2), rat_int(3));
    }

    #[test]
    fn hecke_recursion_symbolic_cube() {
        // a^3 - 2 chi a at r = 3
        let vars = VarSet::new(["a", "chi"]);
        let a = vars.var(0);
        let chi = vars.var(1);
        let got = hecke_prime_power(&a, &chi, 3);
        let want = a.clone() * a.clone() * a.clone()
            - MPoly::constant(vars.clone(), rat_int(2)) * chi * a;
        assert_eq!(got, want);
    }

    #[test]
    fn hecke_generating_function() {
        // sum_r a_{P^r} Y^r = 1/(1 - a Y + chi Y^2) to order 12
        use crate::poly::Poly;
        use crate::ratfunc::RationalFunction;
        let vars = VarSet::new(["a", "chi"]);
        let a = vars.var(0);
        let chi = vars.var(1);
        let den = Poly::from_coeffs(vec![
            MPoly::constant(vars.clone(), rat_int(1)),
            -a.clone(),
            chi.clone(),
        ]);
        let rf = RationalFunction::new(Poly::one(), den).unwrap();
        let series = rf.expand(12);
        for r in 0..12 {
            assert_eq!(series.coeff(r), hecke_prime_power(&a, &chi, r as u32), "r = {r}");
        }
    }

    #[test]
    fn satake_recognises_roots_of_unity() {
        // a=2, chi=1 -> {1,1}
        assert_eq!(
            satake(&rat_int(2), &rat_int(1)),
            SatakePair::Rational(rat_int(1), rat_int(1))
        );
        // a=0, chi=1 -> {i, -i}
        let s = satake(&rat_int(0), &rat_int(1));
        let i = Cyclotomic::root_of_unity(4, 1);
        assert_eq!(s, SatakePair::Cyclotomic(i.clone(), i.conj()));
        // a=1, chi=1 -> primitive 6th roots
        let s = satake(&rat_int(1), &rat_int(1));
        let z6 = Cyclotomic::root_of_unity(6, 1);
        assert_eq!(s, SatakePair::Cyclotomic(z6.clone(), z6.conj()));
    }

    #[test]
    fn satake_sum_product_invariant() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..50 {
            let a = rat(rng.gen_range(-9..10), rng.gen_range(1..7));
            let c = rat(rng.gen_range(-9..10).max(1), rng.gen_range(1..7));
            let pair = satake(&a, &c);
            assert_eq!(pair.sum_cyclotomic(), Cyclotomic::rational(a.clone()));
            assert_eq!(pair.prod_cyclotomic(), Cyclotomic::rational(c.clone()));
        }
    }

    #[test]
    fn stabilise_weight_two() {
        // X^2 - 3X + 5 at p=5: alpha = 3 mod 5, lifts 18 mod 25, 93 mod 125, 218 mod 625
        let (a, b) = p_stabilize(&rat_int(3), &rat_int(1), 5, 2, 4).unwrap();
        assert_eq!(a, PAdicInt::from_i64(5, 4, 218));
        let sum = a.add(&b).unwrap();
        assert_eq!(sum, PAdicInt::from_i64(5, 4, 3));
        let prod = a.mul(&b).unwrap();
        assert_eq!(prod, PAdicInt::from_i64(5, 4, 5));
    }

    #[test]
    fn stabilise_rejects_non_ordinary() {
        assert_eq!(
            p_stabilize(&rat_int(5), &rat_int(1), 5, 2, 3).unwrap_err(),
            HilbertError::NonOrdinary
        );
    }

    #[test]
    fn stabilise_unit_root_of_one_plus_p() {
        let (a, _) = p_stabilize(&rat_int(6), &rat_int(1), 5, 2, 3).unwrap();
        assert_eq!(a.residue() % BigUint::from(5u32), BigUint::one());
    }

    #[test]
    fn alg_value_literals() {
        assert_eq!(parse_alg_value("-3/2").unwrap(), AlgValue::Rat(rat(-3, 2)));
        assert_eq!(parse_alg_value("a1").unwrap(), AlgValue::Sym("a1".into()));
        let z = parse_alg_value("zeta_12^5 + 2*zeta_12 - 1/3").unwrap();
        match z {
            AlgValue::Cyc(c) => {
                let want = Cyclotomic::root_of_unity(12, 5)
                    .add(&Cyclotomic::root_of_unity(12, 1).mul_rational(&rat_int(2)))
                    .sub(&Cyclotomic::rational(rat(1, 3)));
                assert_eq!(c, want);
            }
            other => panic!("expected cyclotomic, got {other:?}"),
        }
    }
}
