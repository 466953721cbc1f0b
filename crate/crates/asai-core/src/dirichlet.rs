//! Dirichlet characters with exact cyclotomic values, conductors and Gauss sums.
//!
//! A character of (Z/N)^x is stored by its values on a fixed generating set
//! of the unit group, each value a root of unity recorded as an exponent.

use num_integer::Integer;
use thiserror::Error;

use crate::cyclotomic::{euler_phi, Cyclotomic};

#[derive(Debug, Error, PartialEq)]
pub enum CharacterError {
    #[error("gauss sum requires primitive character")]
    NotPrimitive,
    #[error("value at non-coprime argument requested")]
    NotCoprime,
    #[error("invalid character data: {0}")]
    Invalid(String),
}

/// One cyclic component of (Z/p^e)^x.
#[derive(Clone, Debug, PartialEq)]
struct CyclicFactor {
    /// prime power modulus piece
    modulus: u64,
    /// generator of the cyclic piece (for 2^e with e >= 3 there are two factors)
    generator: u64,
    /// order of the generator
    order: u64,
}

/// Decomposes (Z/N)^x into cyclic factors with explicit generators,
/// compatible with the CRT splitting of N.
fn unit_group_factors(n: u64) -> Vec<CyclicFactor> {
    let mut out = Vec::new();
    let mut m = n;
    let mut p = 2u64;
    while m > 1 {
        if m % p == 0 {
            let mut e = 0u32;
            let mut q = 1u64;
            while m % p == 0 {
                m /= p;
                e += 1;
                q *= p;
            }
            if p == 2 {
                match e {
                    1 => {}
                    2 => out.push(CyclicFactor { modulus: 4, generator: 3, order: 2 }),
                    _ => {
                        out.push(CyclicFactor { modulus: q, generator: q - 1, order: 2 });
                        out.push(CyclicFactor { modulus: q, generator: 5, order: q / 4 });
                    }
                }
            } else {
                let g = primitive_root_mod_prime_power(p, e);
                out.push(CyclicFactor { modulus: q, generator: g, order: euler_phi(q) });
            }
        }
        p = if p == 2 { 3 } else { p + 2 };
        if p * p > m && m > 1 {
            let q = m;
            let g = primitive_root_mod_prime_power(q, 1);
            out.push(CyclicFactor { modulus: q, generator: g, order: q - 1 });
            break;
        }
    }
    out
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc: u128 = 1;
    let mm = m as u128;
    let mut bb = (b % m) as u128;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * bb % mm;
        }
        bb = bb * bb % mm;
        e >>= 1;
    }
    b = acc as u64;
    b
}

/// Smallest primitive root mod p, lifted to p^e when needed.
pub fn primitive_root_mod_prime_power(p: u64, e: u32) -> u64 {
    assert!(p % 2 == 1);
    let phi = p - 1;
    let mut factors = Vec::new();
    let mut m = phi;
    let mut q = 2;
    while q * q <= m {
        if m % q == 0 {
            factors.push(q);
            while m % q == 0 {
                m /= q;
            }
        }
        q += 1;
    }
    if m > 1 {
        factors.push(m);
    }
    let mut g = 2;
    loop {
        if factors.iter().all(|&f| pow_mod(g, phi / f, p) != 1) {
            break;
        }
        g += 1;
    }
    if e == 1 {
        return g;
    }
    // lift: g is a primitive root mod p^e unless g^{p-1} = 1 mod p^2
    let p2 = p * p;
    if pow_mod(g, p - 1, p2) == 1 {
        g += p;
    }
    g
}

/// Discrete log of x in the cyclic group generated by g mod m (brute force;
/// the moduli in play are small).
fn dlog(g: u64, order: u64, m: u64, x: u64) -> Option<u64> {
    let mut acc = 1u64;
    for k in 0..order {
        if acc == x % m {
            return Some(k);
        }
        acc = (acc as u128 * g as u128 % m as u128) as u64;
    }
    None
}

/// A Dirichlet character modulo N with root-of-unity values.
#[derive(Clone, Debug, PartialEq)]
pub struct DirichletCharacter {
    modulus: u64,
    factors: Vec<CyclicFactor>,
    /// value on factors[i].generator is zeta_{order_i}^{exps[i]}
    exps: Vec<u64>,
    /// common order of all values (lcm of order_i / gcd)
    value_order: u64,
    conductor: u64,
}

impl DirichletCharacter {
    /// Builds a character from generator-value exponents.
    ///
    /// `gen_exps[i] = t` means the character sends the i-th generator to
    /// `zeta_{d_i}^t` where `d_i` is that generator's order.
    pub fn from_generator_exponents(
        modulus: u64,
        gen_exps: &[u64],
    ) -> Result<Self, CharacterError> {
        let factors = unit_group_factors(modulus);
        if gen_exps.len() != factors.len() {
            return Err(CharacterError::Invalid(format!(
                "expected {} generator values for modulus {}",
                factors.len(),
                modulus
            )));
        }
        let exps: Vec<u64> =
            gen_exps.iter().zip(&factors).map(|(&t, f)| t % f.order).collect();
        let mut value_order = 1u64;
        for (t, f) in exps.iter().zip(&factors) {
            if *t != 0 {
                value_order = value_order.lcm(&(f.order / f.order.gcd(t)));
            }
        }
        let mut ch = Self { modulus, factors, exps, value_order, conductor: 1 };
        ch.conductor = ch.compute_conductor();
        Ok(ch)
    }

    pub fn trivial(modulus: u64) -> Self {
        let factors = unit_group_factors(modulus);
        let exps = vec![0; factors.len()];
        Self { modulus, factors, exps, value_order: 1, conductor: 1 }
    }

    /// The quadratic character mod an odd prime p.
    pub fn quadratic(p: u64) -> Self {
        assert!(p % 2 == 1 && p > 2);
        Self::from_generator_exponents(p, &[(p - 1) / 2]).unwrap()
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn is_primitive(&self) -> bool {
        self.conductor == self.modulus
    }

    pub fn is_trivial(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn value_order(&self) -> u64 {
        self.value_order.max(1)
    }

    /// Value exponent: chi(x) = zeta_{value_order}^{exp}; `None` when
    /// gcd(x, N) > 1 (the character value is 0 there).
    pub fn value_exponent(&self, x: u64) -> Option<u64> {
        let x = x % self.modulus;
        if self.modulus > 1 && x.gcd(&self.modulus) != 1 {
            return None;
        }
        let vo = self.value_order();
        let mut acc = 0u128;
        let mut i = 0;
        while i < self.factors.len() {
            let f = &self.factors[i];
            // the modulus-2^e piece (e >= 3) decomposes as {+-1} x <5>
            let two_part = f.modulus % 2 == 0
                && i + 1 < self.factors.len()
                && self.factors[i + 1].modulus == f.modulus;
            if two_part {
                let q = f.modulus;
                let xq = x % q;
                let (sign_exp, five_exp) = match dlog(5, q / 4, q, xq) {
                    Some(b) => (0u64, b),
                    None => {
                        let b = dlog(5, q / 4, q, q - xq)
                            .expect("(Z/2^e)^x = {+-1} x <5>");
                        (1u64, b)
                    }
                };
                for (fac, t, k) in [
                    (&self.factors[i], self.exps[i], sign_exp),
                    (&self.factors[i + 1], self.exps[i + 1], five_exp),
                ] {
                    if t == 0 {
                        continue;
                    }
                    let e = (t as u128 * k as u128) % fac.order as u128;
                    // zeta_{order}^e lies in mu_vo, so e*vo/order is integral
                    let scaled = e * vo as u128 / fac.order as u128;
                    debug_assert_eq!(e * vo as u128 % fac.order as u128, 0);
                    acc = (acc + scaled) % vo as u128;
                }
                i += 2;
                continue;
            }
            let t = self.exps[i];
            if t != 0 {
                let k = dlog(f.generator, f.order, f.modulus, x % f.modulus)? as u128;
                let e = (t as u128 * k) % f.order as u128;
                let scaled = e * vo as u128 / f.order as u128;
                debug_assert_eq!(e * vo as u128 % f.order as u128, 0);
                acc = (acc + scaled) % vo as u128;
            }
            i += 1;
        }
        Some(acc as u64)
    }

    /// Exact cyclotomic value; zero when gcd(x, N) > 1.
    pub fn value(&self, x: u64) -> Cyclotomic {
        match self.value_exponent(x) {
            None => Cyclotomic::rational(crate::rational::Rational::from_integer(0.into())),
            Some(e) => Cyclotomic::root_of_unity(self.value_order(), e as i64),
        }
    }

    /// chi(-1) as +1 or -1.
    pub fn parity(&self) -> i32 {
        if self.modulus <= 2 {
            return 1;
        }
        let e = self
            .value_exponent(self.modulus - 1)
            .expect("-1 is a unit");
        let vo = self.value_order();
        // chi(-1)^2 = 1, so the exponent is 0 or vo/2
        if e == 0 {
            1
        } else {
            debug_assert_eq!(2 * e, vo);
            -1
        }
    }

    fn compute_conductor(&self) -> u64 {
        // smallest divisor d of N such that chi factors through (Z/d)^x:
        // chi(x) = 1 for all x = 1 mod d with gcd(x, N) = 1
        let mut best = self.modulus;
        for d in crate::dirichlet::divisors_of(self.modulus) {
            let mut ok = true;
            let mut x = 1 + d;
            while x < self.modulus + 1 {
                let xr = x % self.modulus;
                if xr != 1 && xr.gcd(&self.modulus) == 1 {
                    if self.value_exponent(xr) != Some(0) {
                        ok = false;
                        break;
                    }
                }
                x += d;
            }
            if ok && d < best {
                best = d;
                break;
            }
        }
        best
    }
}

pub fn divisors_of(n: u64) -> Vec<u64> {
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

/// Gauss sum of a primitive character modulo its conductor q:
/// `G(nu) = sum over units a of nu(a) zeta_q^a`, an element of
/// `Q(zeta_{lcm(q, value order)})`.
pub fn gauss_sum(nu: &DirichletCharacter) -> Result<Cyclotomic, CharacterError> {
    if !nu.is_primitive() || nu.modulus() == 1 {
        return Err(CharacterError::NotPrimitive);
    }
    let q = nu.modulus();
    let vo = nu.value_order();
    let n = q.lcm(&vo);
    let mut acc = Cyclotomic::rational(crate::rational::Rational::from_integer(0.into()));
    for a in 1..q {
        if a.gcd(&q) != 1 {
            continue;
        }
        let e = nu.value_exponent(a).unwrap();
        // nu(a) * e(a/q) = zeta_n^{e*(n/vo) + a*(n/q)}
        let expo = (e as i64) * (n / vo) as i64 + (a as i64) * (n / q) as i64;
        acc = acc.add(&Cyclotomic::root_of_unity(n, expo));
    }
    Ok(acc)
}

/// Exact check that |G(nu)|^2 = q, performed in the group ring Z[Z/n]
/// (sparse convolution of root-of-unity exponents, then one reduction).
pub fn gauss_sum_norm_is_conductor(nu: &DirichletCharacter) -> Result<bool, CharacterError> {
    if !nu.is_primitive() || nu.modulus() == 1 {
        return Err(CharacterError::NotPrimitive);
    }
    let q = nu.modulus();
    let vo = nu.value_order();
    let n = q.lcm(&vo);
    // exponent-coefficient vector of G as sum of roots of unity
    let mut vec_g: Vec<i64> = vec![0; n as usize];
    for a in 1..q {
        if a.gcd(&q) != 1 {
            continue;
        }
        let e = nu.value_exponent(a).unwrap();
        let expo = ((e as u128 * (n / vo) as u128 + a as u128 * (n / q) as u128) % n as u128) as usize;
        vec_g[expo] += 1;
    }
    // conjugate: exponent negation
    let mut conv: Vec<i64> = vec![0; n as usize];
    let support: Vec<usize> = (0..n as usize).filter(|&i| vec_g[i] != 0).collect();
    for &i in &support {
        for &j in &support {
            let k = (i + n as usize - j) % n as usize;
            conv[k] += vec_g[i] * vec_g[j];
        }
    }
    // reduce sum conv[k] zeta_n^k - q to zero mod Phi_n
    let mut poly: Vec<i128> = conv.iter().map(|&c| c as i128).collect();
    poly[0] -= q as i128;
    Ok(reduces_to_zero_mod_cyclotomic(&mut poly, n))
}

/// Remainder-zero test of an integer polynomial modulo Phi_n.
fn reduces_to_zero_mod_cyclotomic(poly: &mut [i128], n: u64) -> bool {
    let phi = crate::cyclotomic::cyclotomic_polynomial(n);
    let phi: Vec<i128> = phi
        .iter()
        .map(|c| {
            use num_traits::ToPrimitive;
            c.to_i128().expect("cyclotomic coefficient fits i128")
        })
        .collect();
    let d = phi.len() - 1;
    for k in (d..poly.len()).rev() {
        let c = poly[k];
        if c == 0 {
            continue;
        }
        // phi is monic: subtract c * x^{k-d} * phi
        for (i, pc) in phi.iter().enumerate() {
            poly[k - d + i] -= c * pc;
        }
    }
    poly.iter().all(|&c| c == 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat_int;

    #[test]
    fn quadratic_mod_five_gauss_sum() {
        // zeta + zeta^4 - zeta^2 - zeta^3 where zeta = zeta_5
        let nu = DirichletCharacter::quadratic(5);
        let g = gauss_sum(&nu).unwrap();
        let want = Cyclotomic::root_of_unity(5, 1)
            .add(&Cyclotomic::root_of_unity(5, 4))
            .sub(&Cyclotomic::root_of_unity(5, 2))
            .sub(&Cyclotomic::root_of_unity(5, 3));
        assert_eq!(g, want);
        // equals sqrt(5): square is 5
        assert_eq!(g.mul(&g), Cyclotomic::rational(rat_int(5)));
    }

    #[test]
    fn quadratic_mod_three_gauss_sum() {
        let nu = DirichletCharacter::quadratic(3);
        let g = gauss_sum(&nu).unwrap();
        let want = Cyclotomic::root_of_unity(3, 1).sub(&Cyclotomic::root_of_unity(3, 2));
        assert_eq!(g, want);
        assert_eq!(g.mul(&g), Cyclotomic::rational(rat_int(-3)));
    }

    #[test]
    fn imprimitive_rejected() {
        let chi = DirichletCharacter::trivial(9);
        assert_eq!(gauss_sum(&chi).unwrap_err(), CharacterError::NotPrimitive);
    }

    #[test]
    fn conductor_of_lifted_character() {
        // quadratic character mod 5 lifted to modulus 15 has conductor 5
        let lifted = DirichletCharacter::from_generator_exponents(15, &[1, 0]).unwrap();
        // factors of 15: 3 (gen order 2), 5 (gen order 4): exps chosen so the
        // 3-part is quadratic and the 5-part trivial -> conductor 3
        assert_eq!(lifted.conductor(), 3);
        assert!(!lifted.is_primitive());
    }

    #[test]
    fn norm_check_small_cases() {
        for p in [3u64, 5, 7, 11, 13] {
            let nu = DirichletCharacter::quadratic(p);
            assert!(gauss_sum_norm_is_conductor(&nu).unwrap());
        }
    }
}
