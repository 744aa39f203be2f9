//! Residues modulo `p` and `p^2`, factorial tables and the symbol `(p/3)`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

/// Canonical element of `Z/mZ`. Arithmetic between different moduli panics.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Residue {
    value: u64,
    modulus: u64,
}

impl Residue {
    pub fn new(value: i64, modulus: u64) -> Self {
        assert!(modulus >= 1, "modulus must be positive");
        Residue {
            value: value.rem_euclid(modulus as i64) as u64,
            modulus,
        }
    }

    pub fn zero(modulus: u64) -> Self {
        Residue::new(0, modulus)
    }

    pub fn one(modulus: u64) -> Self {
        Residue::new(1, modulus)
    }

    pub fn value(self) -> u64 {
        self.value
    }

    pub fn modulus(self) -> u64 {
        self.modulus
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    /// Representative of least absolute value, in `(-m/2, m/2]`.
    pub fn signed(self) -> i64 {
        if self.value > self.modulus / 2 {
            self.value as i64 - self.modulus as i64
        } else {
            self.value as i64
        }
    }

    pub fn pow(self, e: u64) -> Residue {
        pow_mod(self, e)
    }

    pub fn inverse(self) -> Result<Residue> {
        inverse(self)
    }

    fn check_same(self, other: Residue) {
        assert_eq!(
            self.modulus, other.modulus,
            "residue arithmetic across different moduli"
        );
    }
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Add for Residue {
    type Output = Residue;
    fn add(self, rhs: Residue) -> Residue {
        self.check_same(rhs);
        let v = (self.value as u128 + rhs.value as u128) % self.modulus as u128;
        Residue {
            value: v as u64,
            modulus: self.modulus,
        }
    }
}

impl Sub for Residue {
    type Output = Residue;
    fn sub(self, rhs: Residue) -> Residue {
        self + (-rhs)
    }
}

impl Neg for Residue {
    type Output = Residue;
    fn neg(self) -> Residue {
        Residue {
            value: (self.modulus - self.value) % self.modulus,
            modulus: self.modulus,
        }
    }
}

impl Mul for Residue {
    type Output = Residue;
    fn mul(self, rhs: Residue) -> Residue {
        self.check_same(rhs);
        let v = (self.value as u128 * rhs.value as u128) % self.modulus as u128;
        Residue {
            value: v as u64,
            modulus: self.modulus,
        }
    }
}

impl Mul<i64> for Residue {
    type Output = Residue;
    fn mul(self, rhs: i64) -> Residue {
        self * Residue::new(rhs, self.modulus)
    }
}

impl std::iter::Sum for Residue {
    /// Panics on an empty iterator, which has no modulus to sum into.
    fn sum<I: Iterator<Item = Residue>>(mut iter: I) -> Residue {
        let first = iter
            .next()
            .expect("sum of residues needs at least one term");
        iter.fold(first, |acc, r| acc + r)
    }
}

/// `x mod m`, canonical for negative `x` too.
pub fn reduce(x: &BigInt, m: u64) -> Residue {
    assert!(m >= 2, "modulus must be at least 2");
    let r = x.mod_floor(&BigInt::from(m));
    Residue {
        value: r.to_u64().expect("remainder below modulus"),
        modulus: m,
    }
}

/// `num / den mod m`; fails when `gcd(den, m) != 1`.
pub fn reduce_rat_modulus(x: &BigRational, m: u64) -> Result<Residue> {
    let den = reduce(x.denom(), m);
    let inv = inverse(den).map_err(|_| Error::NotInvertible {
        value: den.value,
        modulus: m,
    })?;
    Ok(reduce(x.numer(), m) * inv)
}

pub fn reduce_rat(x: &BigRational, p: &OddPrime) -> Result<Residue> {
    if (x.denom() % p.p()).is_zero() {
        return Err(Error::DenominatorDivisibleByP { p: p.p() });
    }
    reduce_rat_modulus(x, p.p())
}

/// Inverse by the extended Euclidean algorithm.
pub fn inverse(a: Residue) -> Result<Residue> {
    let m = a.modulus as i128;
    let (mut r0, mut r1) = (m, a.value as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 != 1 {
        return Err(Error::NotInvertible {
            value: a.value,
            modulus: a.modulus,
        });
    }
    Ok(Residue {
        value: t0.rem_euclid(m) as u64,
        modulus: a.modulus,
    })
}

/// Square-and-multiply.
pub fn pow_mod(a: Residue, mut e: u64) -> Residue {
    let mut base = a;
    let mut acc = Residue::one(a.modulus);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base;
        }
        base = base * base;
        e >>= 1;
    }
    acc
}

fn mul_mod_u64(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod_u64(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod_u64(acc, a, m);
        }
        a = mul_mod_u64(a, a, m);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin; the witnesses 2, 3, 5, 7 are exact below
/// 3 215 031 751 and the remaining ones extend that to all of `u64`.
pub fn is_prime(n: u64) -> bool {
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &w in &WITNESSES {
        if n.is_multiple_of(w) {
            return n == w;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &WITNESSES {
        let mut x = pow_mod_u64(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod_u64(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Odd primes in `lo..=hi`, ascending.
pub fn odd_primes_in(lo: u64, hi: u64) -> Vec<u64> {
    (lo.max(3)..=hi)
        .filter(|&p| p % 2 == 1 && is_prime(p))
        .collect()
}

/// The symbol `(p/3)`: `1` for `p ≡ 1`, `-1` for `p ≡ 2`, `0` for `p ≡ 0 (mod 3)`.
pub fn legendre3(p: u64) -> i64 {
    match p % 3 {
        0 => 0,
        1 => 1,
        _ => -1,
    }
}

/// A validated odd prime with `n = (p-1)/2` and factorial tables mod `p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OddPrime {
    p: u64,
    fact: Vec<Residue>,
    inv_fact: Vec<Residue>,
}

impl OddPrime {
    pub fn new(p: u64) -> Result<Self> {
        if p.is_multiple_of(2) || !is_prime(p) {
            return Err(Error::NotOddPrime(p));
        }
        let mut fact = Vec::with_capacity(p as usize);
        let mut acc = Residue::one(p);
        fact.push(acc);
        for k in 1..p {
            acc = acc * Residue::new(k as i64, p);
            fact.push(acc);
        }
        // (p-1)! is a unit, so every inverse factorial exists.
        let mut inv_fact = vec![Residue::zero(p); p as usize];
        let mut inv = inverse(fact[(p - 1) as usize]).expect("(p-1)! is invertible");
        for k in (0..p).rev() {
            inv_fact[k as usize] = inv;
            inv = inv * Residue::new(k as i64, p);
        }
        Ok(OddPrime { p, fact, inv_fact })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// `n = (p - 1) / 2`.
    pub fn half(&self) -> u64 {
        (self.p - 1) / 2
    }

    pub fn fact(&self, k: u64) -> Residue {
        self.fact[k as usize]
    }

    pub fn inv_fact(&self, k: u64) -> Residue {
        self.inv_fact[k as usize]
    }

    pub fn residue(&self, v: i64) -> Residue {
        Residue::new(v, self.p)
    }

    pub fn legendre3(&self) -> Residue {
        self.residue(legendre3(self.p))
    }

    /// `(-1)^n` with `n = (p-1)/2`.
    pub fn sign_half(&self) -> Residue {
        self.residue(if self.half().is_multiple_of(2) { 1 } else { -1 })
    }

    /// Residue of a rational with denominator prime to `p`.
    pub fn frac(&self, num: i64, den: i64) -> Result<Residue> {
        reduce_rat(&crate::exact::rat(num, den), self)
    }
}

/// `binom(n, k) mod p` from the factorial tables; requires `n < p`.
pub fn binom_mod(n: u64, k: i64, p: &OddPrime) -> Residue {
    assert!(n < p.p(), "binom_mod needs n < p");
    if k < 0 || k as u64 > n {
        return Residue::zero(p.p());
    }
    let k = k as u64;
    p.fact(n) * p.inv_fact(k) * p.inv_fact(n - k)
}

/// `binom(n, k) mod p` for arbitrary `n` by Lucas' theorem.
pub fn lucas_binom(mut n: u64, mut k: u64, p: &OddPrime) -> Residue {
    let mut acc = Residue::one(p.p());
    while k > 0 || n > 0 {
        let (nd, kd) = (n % p.p(), k % p.p());
        if kd > nd {
            return Residue::zero(p.p());
        }
        acc = acc * binom_mod(nd, kd as i64, p);
        n /= p.p();
        k /= p.p();
    }
    acc
}
