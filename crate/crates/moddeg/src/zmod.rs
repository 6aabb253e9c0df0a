//! Exact modular and binomial arithmetic shared by the other modules.
//!
//! Everything here is integer-exact: binomial coefficients go through
//! arbitrary precision before any reduction, and primality is decided by
//! trial division (all moduli in this crate are tiny).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};

use crate::{Error, Result};

/// Deterministic primality test by trial division.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Canonical prime factorization, primes ascending. Rejects 0; `factorize(1)`
/// is the empty product.
pub fn factorize(m: u64) -> Result<Vec<(u64, u32)>> {
    if m == 0 {
        return Err(Error::FactorizeZero);
    }
    let mut rest = m;
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= rest {
        if rest % p == 0 {
            let mut e = 0;
            while rest % p == 0 {
                rest /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if rest > 1 {
        out.push((rest, 1));
    }
    Ok(out)
}

/// An integer modulus `m >= 2` together with its prime factorization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Modulus {
    value: u64,
    factors: Vec<(u64, u32)>,
}

impl Modulus {
    pub fn new(value: u64) -> Result<Self> {
        if value < 2 {
            return Err(Error::BadModulus(value));
        }
        Ok(Modulus { value, factors: factorize(value)? })
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    /// `(prime, exponent)` pairs, primes strictly increasing.
    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    /// The prime power components `p^e` whose product is the modulus.
    pub fn prime_powers(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, e)| p.pow(e))
    }

    pub fn is_square_free(&self) -> bool {
        self.factors.iter().all(|&(_, e)| e == 1)
    }
}

/// A canonical residue in `[0, m)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Residue {
    value: u64,
    modulus: u64,
}

impl Residue {
    /// Reduces any signed integer by Euclidean remainder.
    pub fn new(v: i128, m: u64) -> Result<Self> {
        if m < 2 {
            return Err(Error::BadModulus(m));
        }
        Ok(Residue { value: v.rem_euclid(m as i128) as u64, modulus: m })
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }
}

/// Euler's totient of `p^t` for prime `p`: `p^t - p^(t-1)` for `t >= 1`, and
/// 1 for `t = 0`.
pub fn euler_phi(p: u64, t: u32) -> Result<u64> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    Ok(if t == 0 { 1 } else { p.pow(t) - p.pow(t - 1) })
}

/// Generalized binomial coefficient `C(a, j)` for any integer `a`, exact.
///
/// The falling factorial `a(a-1)...(a-j+1)` is always divisible by `j!`, so
/// the division below never truncates. For negative `a` this realizes
/// `C(-b, j) = (-1)^j C(b+j-1, j)`.
pub fn generalized_binom(a: i64, j: u64) -> BigInt {
    let mut num = BigInt::one();
    for i in 0..j {
        num *= BigInt::from(a) - BigInt::from(i);
    }
    let mut den = BigInt::one();
    for i in 1..=j {
        den *= BigInt::from(i);
    }
    num / den
}

/// `C(a, j)` reduced to a canonical residue mod `m`.
pub fn generalized_binom_mod(a: i64, j: u64, m: u64) -> Result<Residue> {
    if m < 2 {
        return Err(Error::BadModulus(m));
    }
    let r = generalized_binom(a, j).mod_floor(&BigInt::from(m));
    Ok(Residue { value: r.to_u64().expect("reduced residue fits u64"), modulus: m })
}

pub(crate) fn pow_mod(mut b: u128, mut e: u64, m: u128) -> u128 {
    let mut acc = 1u128;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

// C(n, k) mod p for digits n, k < p, via Fermat inversion of k!.
fn binom_digit_mod(n: u64, k: u64, p: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let pm = p as u128;
    let mut num = 1u128;
    let mut den = 1u128;
    for i in 0..k {
        num = num * ((n - i) as u128) % pm;
        den = den * ((i + 1) as u128) % pm;
    }
    (num * pow_mod(den, p - 2, pm) % pm) as u64
}

/// `C(n, k) mod p` by the digitwise product in base `p` (Lucas).
pub fn lucas_binom(n: u64, k: u64, p: u64) -> Result<Residue> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let (mut n, mut k) = (n, k);
    let mut acc = 1u64;
    while (n > 0 || k > 0) && acc != 0 {
        acc = acc * binom_digit_mod(n % p, k % p, p) % p;
        n /= p;
        k /= p;
    }
    Ok(Residue { value: acc, modulus: p })
}
