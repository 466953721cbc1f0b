//! Finite-precision p-adic integers: residues modulo p^M.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum PadicError {
    #[error("no square root: quadratic non-residue")]
    NoSquareRoot,
    #[error("unit required: argument divisible by p")]
    UnitRequired,
    #[error("incompatible precision or prime")]
    Mismatch,
}

/// Valuation of a residue known modulo p^M.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Valuation {
    Exact(u32),
    /// The residue is 0 mod p^M, so only "at least M" is known.
    AtLeast(u32),
}

#[derive(Clone, Debug, PartialEq)]
pub struct PAdicInt {
    p: u64,
    precision: u32,
    residue: BigUint,
}

impl PAdicInt {
    pub fn new(p: u64, precision: u32, value: &BigUint) -> Self {
        let modulus = BigUint::from(p).pow(precision);
        Self { p, precision, residue: value % &modulus }
    }

    pub fn from_i64(p: u64, precision: u32, value: i64) -> Self {
        let modulus = BigUint::from(p).pow(precision);
        let m = (BigUint::from(value.unsigned_abs())) % &modulus;
        let residue = if value < 0 && !m.is_zero() { &modulus - m } else { m };
        Self { p, precision, residue }
    }

    pub fn zero(p: u64, precision: u32) -> Self {
        Self { p, precision, residue: BigUint::zero() }
    }

    pub fn one(p: u64, precision: u32) -> Self {
        Self { p, precision, residue: BigUint::one() }
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn residue(&self) -> &BigUint {
        &self.residue
    }

    pub fn modulus(&self) -> BigUint {
        BigUint::from(self.p).pow(self.precision)
    }

    fn check(&self, other: &Self) -> Result<(), PadicError> {
        if self.p != other.p || self.precision != other.precision {
            return Err(PadicError::Mismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, PadicError> {
        self.check(other)?;
        Ok(Self::new(self.p, self.precision, &(&self.residue + &other.residue)))
    }

    pub fn sub(&self, other: &Self) -> Result<Self, PadicError> {
        self.check(other)?;
        let m = self.modulus();
        let a = &self.residue + &m - (&other.residue % &m);
        Ok(Self::new(self.p, self.precision, &a))
    }

    pub fn mul(&self, other: &Self) -> Result<Self, PadicError> {
        self.check(other)?;
        Ok(Self::new(self.p, self.precision, &(&self.residue * &other.residue)))
    }

    /// Valuation; reports `AtLeast(M)` for the zero residue, never a number.
    pub fn valuation(&self) -> Valuation {
        if self.residue.is_zero() {
            return Valuation::AtLeast(self.precision);
        }
        let p = BigUint::from(self.p);
        let mut v = 0;
        let mut r = self.residue.clone();
        while (&r % &p).is_zero() {
            r /= &p;
            v += 1;
        }
        Valuation::Exact(v)
    }

    pub fn is_unit(&self) -> bool {
        matches!(self.valuation(), Valuation::Exact(0))
    }

    /// Multiplicative inverse of a unit.
    pub fn inverse(&self) -> Result<Self, PadicError> {
        if !self.is_unit() {
            return Err(PadicError::UnitRequired);
        }
        let m = self.modulus();
        let inv = mod_inverse(&self.residue, &m).ok_or(PadicError::UnitRequired)?;
        Ok(Self { p: self.p, precision: self.precision, residue: inv })
    }

    pub fn pow_i64(&self, e: i64) -> Result<Self, PadicError> {
        if e < 0 {
            return self.inverse()?.pow_i64(-e);
        }
        let m = self.modulus();
        Ok(Self {
            p: self.p,
            precision: self.precision,
            residue: self.residue.modpow(&BigUint::from(e as u64), &m),
        })
    }

    /// Teichmueller lift: the (p-1)-th root of unity congruent to this unit mod p.
    pub fn teichmueller(&self) -> Result<Self, PadicError> {
        if !self.is_unit() {
            return Err(PadicError::UnitRequired);
        }
        let m = self.modulus();
        let mut t = self.residue.clone();
        for _ in 0..self.precision {
            t = t.modpow(&BigUint::from(self.p), &m);
        }
        Ok(Self { p: self.p, precision: self.precision, residue: t })
    }
}

pub fn mod_inverse(a: &BigUint, m: &BigUint) -> Option<BigUint> {
    let e = num_bigint::BigInt::from(a.clone()).extended_gcd(&num_bigint::BigInt::from(m.clone()));
    if !e.gcd.is_one() {
        return None;
    }
    let mi = num_bigint::BigInt::from(m.clone());
    let x = ((e.x % &mi) + &mi) % &mi;
    x.to_biguint()
}

/// Square root of a unit residue mod p (odd p) by Tonelli-Shanks.
fn sqrt_mod_p(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        return Some(0);
    }
    let pow = |mut b: u64, mut e: u64| -> u64 {
        let mut acc: u128 = 1;
        let mut bb: u128 = b as u128;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * bb % p as u128;
            }
            bb = bb * bb % p as u128;
            e >>= 1;
        }
        b = acc as u64;
        b
    };
    if pow(a, (p - 1) / 2) != 1 {
        return None;
    }
    if p % 4 == 3 {
        return Some(pow(a, (p + 1) / 4));
    }
    // Tonelli-Shanks
    let mut q = p - 1;
    let mut s = 0;
    while q % 2 == 0 {
        q /= 2;
        s += 1;
    }
    let mut z = 2;
    while pow(z, (p - 1) / 2) == 1 {
        z += 1;
    }
    let mut m = s;
    let mut c = pow(z, q);
    let mut t = pow(a, q);
    let mut r = pow(a, (q + 1) / 2);
    while t != 1 {
        let mut i = 0;
        let mut tt = t;
        while tt != 1 {
            tt = (tt as u128 * tt as u128 % p as u128) as u64;
            i += 1;
        }
        let mut b = c;
        for _ in 0..(m - i - 1) {
            b = (b as u128 * b as u128 % p as u128) as u64;
        }
        m = i;
        c = (b as u128 * b as u128 % p as u128) as u64;
        t = (t as u128 * c as u128 % p as u128) as u64;
        r = (r as u128 * b as u128 % p as u128) as u64;
    }
    Some(r)
}

/// Hensel-lifted square root of a unit mod p^M (odd p).
///
/// The returned root is the lift of the mod-p square root lying in
/// `[1, (p-1)/2]`, which fixes the sign deterministically.
pub fn padic_sqrt(a: i64, p: u64, precision: u32) -> Result<PAdicInt, PadicError> {
    assert!(p % 2 == 1 && p > 2, "odd prime required");
    let ap = ((a % p as i64) + p as i64) as u64 % p;
    if ap == 0 {
        return Err(PadicError::UnitRequired);
    }
    let r0 = sqrt_mod_p(ap, p).ok_or(PadicError::NoSquareRoot)?;
    let r0 = r0.min(p - r0); // tie-break: residue in [1, (p-1)/2]
    let target = PAdicInt::from_i64(p, precision, a);
    let modulus = target.modulus();
    let mut r = BigUint::from(r0);
    let mut cur = BigUint::from(p);
    while cur < modulus {
        cur = (&cur * &cur).min(modulus.clone());
        // Newton: r <- r - (r^2 - a) / (2r) mod cur
        let a_mod = target.residue() % &cur;
        let r2 = (&r * &r) % &cur;
        let diff = (&r2 + &cur - &a_mod) % &cur;
        let denom = (BigUint::from(2u32) * &r) % &cur;
        let dinv = mod_inverse(&denom, &cur).ok_or(PadicError::UnitRequired)?;
        r = (&r + &cur - (diff * dinv) % &cur) % &cur;
    }
    Ok(PAdicInt::new(p, precision, &r))
}

/// p-adic logarithm l(u) with u a 1-unit: log(u)/log(1+p), an element of Z_p.
///
/// Used to express the 1-unit part of u as (1+p)^{l(u)}. Computed at an
/// internal working precision with headroom for the log-series denominators.
pub fn one_unit_exponent(u: &PAdicInt) -> Result<PAdicInt, PadicError> {
    let p = u.prime();
    let m = u.precision();
    // headroom: series terms x^k/k lose v_p(k); p^k/k gains >= k - log_p k
    let extra = 2 + (2 * m) / (p as u32 - 1).max(1) + 4;
    let w = m + extra;
    let modw = BigUint::from(p).pow(w);
    let uu = u.residue() % &modw; // representative; valid since we only use it mod p^m then lift arbitrarily
    // strip Teichmueller part
    let tw = PAdicInt::new(p, w, &uu).teichmueller()?;
    let twinv = tw.inverse()?;
    let one_unit = (uu * twinv.residue()) % &modw;
    let logu = padic_log_one_unit(&one_unit, p, w);
    let log1p = padic_log_one_unit(&BigUint::from(1 + p), p, w);
    // both have valuation exactly 1 (for u != 1 maybe higher); quotient in Z_p
    let pw = BigUint::from(p);
    let l1 = &log1p / &pw;
    let lu = &logu / &pw;
    let modw1 = BigUint::from(p).pow(w - 1);
    let inv = mod_inverse(&(&l1 % &modw1), &modw1).ok_or(PadicError::UnitRequired)?;
    let ell = (lu * inv) % &modw1;
    // the input (known mod p^m) pins the exponent only mod p^{m-1}
    Ok(PAdicInt::new(p, m.saturating_sub(1).max(1), &ell))
}

/// log(x) for x = 1 mod p, as a residue mod p^w (series sum, exact carries).
fn padic_log_one_unit(x: &BigUint, p: u64, w: u32) -> BigUint {
    // terms t^k/k with v_p(t) >= 1 vanish mod p^w once k - v_p(k) >= w
    let kmax = (2 * w + 4) as u64;
    let vmax = {
        let mut v = 0;
        let mut q = p as u64;
        while q <= kmax {
            v += 1;
            q *= p as u64;
        }
        v
    };
    let work = BigUint::from(p).pow(w + vmax); // headroom for /p^{v_p(k)}
    let modw = BigUint::from(p).pow(w);
    let t = (x + &work - BigUint::one()) % &work; // x - 1
    let mut term = BigUint::one();
    let mut acc = num_bigint::BigInt::zero();
    for k in 1..=kmax {
        term = (&term * &t) % &work;
        let mut kk = k;
        let mut vk = 0u32;
        while kk % p == 0 {
            kk /= p;
            vk += 1;
        }
        if (k as i64 - vk as i64) >= w as i64 {
            continue;
        }
        let pvk = BigUint::from(p).pow(vk);
        debug_assert!((&term % &pvk).is_zero());
        let reduced = (&term / &pvk) % &modw;
        let kinv = mod_inverse(&BigUint::from(kk), &modw).unwrap();
        let contrib = reduced * kinv % &modw;
        if k % 2 == 1 {
            acc += num_bigint::BigInt::from(contrib);
        } else {
            acc -= num_bigint::BigInt::from(contrib);
        }
    }
    let mi = num_bigint::BigInt::from(modw);
    let r = ((acc % &mi) + &mi) % &mi;
    r.to_biguint().unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt_of_one() {
        let r = padic_sqrt(1, 7, 4).unwrap();
        assert_eq!(r.residue(), &BigUint::one());
    }

    #[test]
    fn sqrt_five_mod_eleven_cubed() {
        // mod-11 root of 5 is 4 (tie-break picks 4 over 7); lift to 11^3
        let r = padic_sqrt(5, 11, 3).unwrap();
        let m = BigUint::from(11u32).pow(3);
        assert_eq!((r.residue() * r.residue()) % &m, BigUint::from(5u32));
        assert_eq!(r.residue() % BigUint::from(11u32), BigUint::from(4u32));
    }

    #[test]
    fn sqrt_two_mod_five_fails() {
        assert_eq!(padic_sqrt(2, 5, 3).unwrap_err(), PadicError::NoSquareRoot);
        assert_eq!(padic_sqrt(10, 5, 3).unwrap_err(), PadicError::UnitRequired);
    }

    #[test]
    fn zero_valuation_reports_at_least() {
        let z = PAdicInt::zero(5, 3);
        assert_eq!(z.valuation(), Valuation::AtLeast(3));
        let x = PAdicInt::from_i64(5, 3, 50);
        assert_eq!(x.valuation(), Valuation::Exact(2));
    }

    #[test]
    fn teichmueller_is_root_of_unity() {
        let t = PAdicInt::from_i64(7, 5, 3).teichmueller().unwrap();
        let t6 = t.pow_i64(6).unwrap();
        assert_eq!(t6, PAdicInt::one(7, 5));
        assert_eq!(t.residue() % BigUint::from(7u32), BigUint::from(3u32));
    }

    #[test]
    fn one_unit_exponent_recovers_powers() {
        // u = (1+p)^9 should give l(u) = 9 (one digit of precision is consumed)
        let p = 5u64;
        let m = 6u32;
        let modm = BigUint::from(p).pow(m);
        let u = PAdicInt::new(p, m, &BigUint::from(6u32).modpow(&BigUint::from(9u32), &modm));
        let ell = one_unit_exponent(&u).unwrap();
        assert_eq!(ell, PAdicInt::from_i64(p, m - 1, 9));
        // with a Teichmueller component attached the exponent is unchanged
        let tau = PAdicInt::from_i64(p, m, 2).teichmueller().unwrap();
        let u2 = u.mul(&tau).unwrap();
        assert_eq!(one_unit_exponent(&u2).unwrap(), PAdicInt::from_i64(p, m - 1, 9));
    }

    #[test]
    fn random_sqrt_roundtrip() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..40 {
            let p = [3u64, 5, 7, 13][rng.gen_range(0..4)];
            let x = rng.gen_range(1..1000) as i64;
            if x % p as i64 == 0 {
                continue;
            }
            let a = (x * x) % (p as i64).pow(4);
            let r = padic_sqrt(a, p, 4).unwrap();
            let m = BigUint::from(p).pow(4);
            assert_eq!(
                (r.residue() * r.residue()) % &m,
                BigUint::from(a as u64) % &m
            );
        }
    }
}
