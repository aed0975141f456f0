//! Arithmetic in `Z/p^l Z`: prime contexts with batch-inverted tables, the
//! rational embedding `iota`, and bounded prime generation.

use crate::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

/// Largest supported prime. With superbity capped at 4 every modulus fits in
/// 60 bits, so products fit in u128 without any big-integer fallback.
pub const MAX_PRIME: u64 = 1 << 15;

/// A prime `p` together with a superbity `l`, the modulus `p^l`, and a table
/// of inverses of `1..p` modulo `p^l`.
#[derive(Clone, Debug)]
pub struct PrimeContext {
    p: u64,
    ell: u32,
    modulus: u64,
    inv_table: Vec<u64>,
}

impl PrimeContext {
    /// Build the context. The inverse table is filled by batch inversion:
    /// prefix products, one extended-Euclid inversion, then back-substitution.
    pub fn new(p: u64, ell: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if !(1..=4).contains(&ell) {
            return Err(Error::SuperbityOutOfRange(ell));
        }
        if p >= MAX_PRIME {
            return Err(Error::PrimeTooLarge { p, ell });
        }
        let modulus = p.pow(ell);
        // prefix[k] = 1 * 2 * ... * k mod p^l
        let mut prefix = Vec::with_capacity(p as usize);
        let mut acc: u64 = 1;
        prefix.push(acc);
        for k in 1..p {
            acc = mulmod(acc, k, modulus);
            prefix.push(acc);
        }
        let mut inv_acc = invert_coprime(acc, modulus);
        let mut inv_table = vec![0u64; p as usize];
        for k in (1..p).rev() {
            inv_table[k as usize] = mulmod(inv_acc, prefix[(k - 1) as usize], modulus);
            inv_acc = mulmod(inv_acc, k, modulus);
        }
        Ok(PrimeContext { p, ell, modulus, inv_table })
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn superbity(&self) -> u32 {
        self.ell
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Inverse of `k` modulo `p^l` for `1 <= k < p`.
    pub fn inv(&self, k: u64) -> u64 {
        debug_assert!(k >= 1 && k < self.p);
        self.inv_table[k as usize]
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.modulus {
            s - self.modulus
        } else {
            s
        }
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.modulus - b
        }
    }

    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.modulus - a
        }
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        mulmod(a, b, self.modulus)
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1u64 % self.modulus;
        base %= self.modulus;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// `k^(-s) mod p^l` via square-and-multiply on the inverse-table entry.
    pub fn inv_pow(&self, k: u64, s: u32) -> u64 {
        self.pow(self.inv(k), s as u64)
    }

    /// The embedding of a rational: 0 when `p` divides the denominator,
    /// otherwise the value reduced modulo `p^l`.
    pub fn iota(&self, r: &BigRational) -> u64 {
        if r.is_zero() {
            return 0;
        }
        let p = BigInt::from(self.p);
        if (r.denom() % &p).is_zero() {
            return 0;
        }
        let m = BigInt::from(self.modulus);
        let num = r.numer().mod_floor_big(&m);
        let den = r.denom().mod_floor_big(&m);
        let den_inv = invert_coprime(den.to_u64().unwrap(), self.modulus);
        self.mul(num.to_u64().unwrap(), den_inv)
    }
}

trait ModFloorBig {
    fn mod_floor_big(&self, m: &BigInt) -> BigInt;
}

impl ModFloorBig for BigInt {
    fn mod_floor_big(&self, m: &BigInt) -> BigInt {
        let r = self % m;
        if r.is_negative() {
            r + m
        } else {
            r
        }
    }
}

#[inline]
pub fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// Inverse of `a` modulo `m` for `gcd(a, m) = 1`, by extended Euclid.
pub fn invert_coprime(a: u64, m: u64) -> u64 {
    let (mut old_r, mut r) = (a as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    assert_eq!(old_r, 1, "inverse of non-unit {a} mod {m}");
    old_s.rem_euclid(m as i128) as u64
}

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

/// Ascending primes in `[lo, hi]` by sieve.
pub fn primes_in(lo: u64, hi: u64) -> Vec<u64> {
    if hi < 2 || hi < lo {
        return Vec::new();
    }
    let hi = hi as usize;
    let mut sieve = vec![true; hi + 1];
    sieve[0] = false;
    if hi >= 1 {
        sieve[1] = false;
    }
    let mut k = 2usize;
    while k * k <= hi {
        if sieve[k] {
            let mut j = k * k;
            while j <= hi {
                sieve[j] = false;
                j += k;
            }
        }
        k += 1;
    }
    (lo.max(2) as usize..=hi)
        .filter(|&n| sieve[n])
        .map(|n| n as u64)
        .collect()
}

/// The first `n` primes.
pub fn first_primes(n: usize) -> Vec<u64> {
    if n == 0 {
        return Vec::new();
    }
    // n (ln n + ln ln n) upper bound, padded for small n
    let mut hi = 32u64;
    loop {
        let ps = primes_in(2, hi);
        if ps.len() >= n {
            return ps[..n].to_vec();
        }
        hi *= 2;
    }
}
