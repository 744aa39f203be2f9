//! Exact combinatorics over arbitrary-precision integers and rationals.
//!
//! Every quantity here is computed without reduction; callers reduce into
//! a prime field afterwards. Divisions that are known to be exact (Catalan
//! numbers, super Catalan numbers) are checked and panic if a remainder
//! ever appears.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub type ExactInt = BigInt;
pub type ExactRat = BigRational;

/// Divides `num` by `den`, panicking on a nonzero remainder.
fn div_exact(num: &BigInt, den: &BigInt, what: &str) -> BigInt {
    let (q, r) = num.div_rem(den);
    assert!(r.is_zero(), "{what}: inexact division {num} / {den}");
    q
}

/// `binom(n, k)` by the falling-factorial product; zero outside `0..=n`.
pub fn binomial(n: u64, k: i64) -> ExactInt {
    if k < 0 || k as u64 > n {
        return BigInt::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = BigInt::one();
    for t in 0..k {
        // acc = binom(n, t) here, so the division is exact at every step.
        acc *= n - t;
        acc /= t + 1;
    }
    acc
}

pub fn central_binomial(n: u64) -> ExactInt {
    binomial(2 * n, n as i64)
}

pub fn catalan(n: u64) -> ExactInt {
    div_exact(&central_binomial(n), &BigInt::from(n + 1), "catalan")
}

/// `binom(2m,m) binom(2n,n) / binom(m+n,m)`, always an integer.
pub fn super_catalan(m: u64, n: u64) -> ExactInt {
    let num = central_binomial(m) * central_binomial(n);
    div_exact(&num, &binomial(m + n, m as i64), "super_catalan")
}

pub fn rat_pow(base: &ExactRat, e: i64) -> Result<ExactRat> {
    if e < 0 && base.is_zero() {
        return Err(Error::ZeroToNegativePower);
    }
    let mag = num_traits::pow(base.clone(), e.unsigned_abs() as usize);
    Ok(if e < 0 { mag.recip() } else { mag })
}

pub fn rat(num: i64, den: i64) -> ExactRat {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int_rat(value: ExactInt) -> ExactRat {
    BigRational::from_integer(value)
}

/// Least common multiple of `1..=n` (1 for `n == 0`).
pub fn lcm_upto(n: u64) -> ExactInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc.lcm(&BigInt::from(k)))
}

/// Memoized Pascal triangle. Rows are appended by [`PascalCache::extend_to`]
/// and never change afterwards.
#[derive(Debug, Clone)]
pub struct PascalCache {
    rows: Vec<Vec<ExactInt>>,
}

impl PascalCache {
    pub fn new(max_row: u64) -> Self {
        let mut cache = PascalCache {
            rows: vec![vec![BigInt::one()]],
        };
        cache.extend_to(max_row);
        cache
    }

    pub fn max_row(&self) -> u64 {
        self.rows.len() as u64 - 1
    }

    pub fn extend_to(&mut self, max_row: u64) {
        while self.max_row() < max_row {
            let prev = self.rows.last().expect("row 0 always present");
            let mut row = Vec::with_capacity(prev.len() + 1);
            row.push(BigInt::one());
            row.extend(prev.windows(2).map(|w| &w[0] + &w[1]));
            row.push(BigInt::one());
            self.rows.push(row);
        }
    }

    /// `None` when row `n` has not been built yet.
    pub fn get(&self, n: u64, k: i64) -> Option<ExactInt> {
        let row = self.rows.get(n as usize)?;
        if k < 0 || k as u64 > n {
            return Some(BigInt::zero());
        }
        Some(row[k as usize].clone())
    }

    pub fn row(&self, n: u64) -> Option<&[ExactInt]> {
        self.rows.get(n as usize).map(Vec::as_slice)
    }
}

/// Central binomial coefficients and Catalan numbers for `0..len`, built
/// incrementally from `binom(2k+2,k+1) = binom(2k,k) * 2(2k+1)/(k+1)`.
#[derive(Debug, Clone)]
pub struct CentralTable {
    central: Vec<ExactInt>,
    catalan: Vec<ExactInt>,
}

impl CentralTable {
    pub fn new(len: usize) -> Self {
        let mut central = Vec::with_capacity(len);
        let mut catalan = Vec::with_capacity(len);
        let mut c = BigInt::one();
        for k in 0..len as u64 {
            catalan.push(div_exact(&c, &BigInt::from(k + 1), "catalan"));
            let next = div_exact(&(&c * (2 * (2 * k + 1))), &BigInt::from(k + 1), "central");
            central.push(std::mem::replace(&mut c, next));
        }
        CentralTable { central, catalan }
    }

    pub fn len(&self) -> usize {
        self.central.len()
    }

    pub fn is_empty(&self) -> bool {
        self.central.is_empty()
    }

    pub fn central(&self, k: u64) -> &ExactInt {
        &self.central[k as usize]
    }

    pub fn catalan(&self, k: u64) -> &ExactInt {
        &self.catalan[k as usize]
    }
}

/// `S(m, n)` for all `m, n < size`, stored for `m <= n` only.
///
/// Built from row 0 (`S(0, n) = binom(2n, n)`) with the additive relation
/// `S(m+1, n) = 4 S(m, n) - S(m, n+1)`, so no big divisions are needed.
#[derive(Debug, Clone)]
pub struct SuperCatalanTable {
    size: u64,
    // rows[m][n - m] = S(m, n)
    rows: Vec<Vec<ExactInt>>,
}

impl SuperCatalanTable {
    pub fn new(size: u64) -> Self {
        if size == 0 {
            return SuperCatalanTable {
                size,
                rows: Vec::new(),
            };
        }
        // Row m needs columns up to 2*size - 2 - m.
        let width = 2 * size - 1;
        let mut current: Vec<ExactInt> = CentralTable::new(width as usize).central;
        let mut rows = Vec::with_capacity(size as usize);
        for m in 0..size {
            rows.push(current[m as usize..size as usize].to_vec());
            if m + 1 < size {
                current = current.windows(2).map(|w| (&w[0] << 2) - &w[1]).collect();
            }
        }
        SuperCatalanTable { size, rows }
    }

    /// Exclusive upper bound on both indices.
    pub fn size(&self) -> u64 {
        self.size
    }

    pub fn get(&self, m: u64, n: u64) -> &ExactInt {
        let (lo, hi) = if m <= n { (m, n) } else { (n, m) };
        assert!(
            hi < self.size,
            "S({m},{n}) outside table of size {}",
            self.size
        );
        &self.rows[lo as usize][(hi - lo) as usize]
    }
}
