//! Brute-force verification of the double-sum congruences for concrete primes.
//!
//! Every `S(i, j)` is taken exactly from a shared [`SuperCatalanTable`] and
//! only reduced at the end: `C(i+j, i)` is frequently divisible by `p`, so
//! the terms cannot be formed in `Z/pZ` directly.
//!
//! With `n = (p-1)/2` the square `[0, p-1]²` is split into quadrants
//! `S1 = [0,n]×[0,n]`, `S2 = [0,n]×[n+1,2n]`, `S3 = [n+1,2n]×[0,n]` and
//! `S4 = [n+1,2n]×[n+1,2n]`.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{CentralTable, ExactInt, SuperCatalanTable};
use crate::modular::{binom_mod, lucas_binom, reduce, OddPrime, Residue};
use crate::record::{Instance, SideValue, Suite, VerificationRecord};

/// Largest `q = p^e` the generating-function checks accept.
pub const MAX_GF_MODULUS: u64 = 10_000;

/// Weight applied to `S(i, j)` in the double sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Weight {
    One,
    IPlusJ,
    ThreeIPlusThreeJPlusOne,
}

impl Weight {
    pub const ALL: [Weight; 3] = [Weight::One, Weight::IPlusJ, Weight::ThreeIPlusThreeJPlusOne];

    pub fn factor(self, i: u64, j: u64) -> u64 {
        match self {
            Weight::One => 1,
            Weight::IPlusJ => i + j,
            Weight::ThreeIPlusThreeJPlusOne => 3 * (i + j) + 1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Weight::One => "one",
            Weight::IPlusJ => "i+j",
            Weight::ThreeIPlusThreeJPlusOne => "3i+3j+1",
        }
    }

    fn index(self) -> usize {
        self as usize
    }
}

/// Exact quadrant sums of the weighted double sum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitSums {
    pub s1: ExactInt,
    pub s2: ExactInt,
    pub s3: ExactInt,
    pub s4: ExactInt,
}

impl SplitSums {
    pub fn total(&self) -> ExactInt {
        &self.s1 + &self.s2 + &self.s3 + &self.s4
    }

    pub fn residues(&self, p: u64) -> [Residue; 4] {
        [&self.s1, &self.s2, &self.s3, &self.s4].map(|s| reduce(s, p))
    }
}

/// Outcome of one congruence at one prime (and optionally one instance).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CongruenceCheck {
    pub equation: String,
    pub prime: u64,
    pub instance: Instance,
    pub lhs: Residue,
    pub rhs: Residue,
    pub pass: bool,
}

impl CongruenceCheck {
    pub fn new(
        equation: impl Into<String>,
        prime: u64,
        instance: Instance,
        lhs: Residue,
        rhs: Residue,
    ) -> Self {
        CongruenceCheck {
            equation: equation.into(),
            prime,
            instance,
            lhs,
            rhs,
            pass: lhs == rhs,
        }
    }

    pub fn into_record(self, suite: Suite) -> VerificationRecord {
        VerificationRecord::residues(
            suite,
            self.equation,
            self.prime,
            self.instance,
            self.lhs,
            self.rhs,
        )
    }
}

/// Shared exact tables, built lazily and read-only afterwards.
#[derive(Debug)]
pub struct Tables {
    max_prime: u64,
    super_catalan: OnceLock<SuperCatalanTable>,
    central: OnceLock<CentralTable>,
    central_gf: OnceLock<CentralTable>,
}

impl Tables {
    /// Tables covering every prime up to `max_prime`.
    pub fn new(max_prime: u64) -> Self {
        Tables {
            max_prime,
            super_catalan: OnceLock::new(),
            central: OnceLock::new(),
            central_gf: OnceLock::new(),
        }
    }

    pub fn max_prime(&self) -> u64 {
        self.max_prime
    }

    pub fn super_catalan(&self) -> &SuperCatalanTable {
        self.super_catalan
            .get_or_init(|| SuperCatalanTable::new(self.max_prime))
    }

    /// Central binomials and Catalan numbers for `k < max_prime`.
    pub fn central(&self) -> &CentralTable {
        self.central
            .get_or_init(|| CentralTable::new(self.max_prime as usize))
    }

    /// Central binomials and Catalan numbers for every `k < q`, for the
    /// largest `q = p^e <= MAX_GF_MODULUS` with `p <= max_prime`, `e <= 2`.
    pub fn central_gf(&self) -> &CentralTable {
        self.central_gf.get_or_init(|| {
            let len = crate::modular::odd_primes_in(3, self.max_prime)
                .into_iter()
                .flat_map(|p| [p, p * p])
                .filter(|&q| q <= MAX_GF_MODULUS)
                .max()
                .unwrap_or(0);
            CentralTable::new(len as usize)
        })
    }
}

/// All checks for one prime, memoizing the quadrant sums per weight.
#[derive(Debug)]
pub struct PrimeChecks<'a> {
    tables: &'a Tables,
    prime: OddPrime,
    split: [OnceLock<SplitSums>; 3],
    full: [OnceLock<ExactInt>; 3],
}

impl<'a> PrimeChecks<'a> {
    pub fn new(tables: &'a Tables, p: u64) -> Result<Self> {
        let prime = OddPrime::new(p)?;
        if p > tables.max_prime() {
            return Err(Error::InvalidConfig(format!(
                "prime {p} exceeds table bound {}",
                tables.max_prime()
            )));
        }
        Ok(PrimeChecks {
            tables,
            prime,
            split: Default::default(),
            full: Default::default(),
        })
    }

    pub fn prime(&self) -> &OddPrime {
        &self.prime
    }

    fn p(&self) -> u64 {
        self.prime.p()
    }

    fn r(&self, v: i64) -> Residue {
        self.prime.residue(v)
    }

    fn s(&self, i: u64, j: u64) -> &ExactInt {
        self.tables.super_catalan().get(i, j)
    }

    fn require_at_least_5(&self) -> Result<()> {
        if self.p() < 5 {
            return Err(Error::PrimeTooSmall {
                p: self.p(),
                min: 5,
            });
        }
        Ok(())
    }

    /// `Σ_{i,j<p} w(i,j) S(i,j)` exactly, term by term over the whole square.
    pub fn exact_sum(&self, weight: Weight) -> &ExactInt {
        self.full[weight.index()].get_or_init(|| {
            let mut acc = BigInt::zero();
            for i in 0..self.p() {
                for j in 0..self.p() {
                    acc += self.s(i, j) * weight.factor(i, j);
                }
            }
            acc
        })
    }

    pub fn sum_s(&self, weight: Weight) -> Residue {
        reduce(self.exact_sum(weight), self.p())
    }

    pub fn split_sums(&self, weight: Weight) -> &SplitSums {
        self.split[weight.index()].get_or_init(|| {
            let n = self.prime.half();
            let mut q = [
                BigInt::zero(),
                BigInt::zero(),
                BigInt::zero(),
                BigInt::zero(),
            ];
            for i in 0..self.p() {
                for j in 0..self.p() {
                    let slot = 2 * usize::from(i > n) + usize::from(j > n);
                    q[slot] += self.s(i, j) * weight.factor(i, j);
                }
            }
            let [s1, s2, s3, s4] = q;
            SplitSums { s1, s2, s3, s4 }
        })
    }

    fn check(&self, equation: impl Into<String>, lhs: Residue, rhs: Residue) -> CongruenceCheck {
        CongruenceCheck::new(equation, self.p(), Instance::default(), lhs, rhs)
    }

    /// `-8/3 (p/3)`, the weighted target.
    fn weighted_target(&self) -> Result<Residue> {
        Ok(self.prime.frac(-8, 3)? * self.prime.legendre3())
    }

    /// `Σ S(i,j) ≡ (p/3)`.
    pub fn check_double_sum(&self) -> CongruenceCheck {
        self.check(
            "double-sum",
            self.sum_s(Weight::One),
            self.prime.legendre3(),
        )
    }

    /// `Σ (i+j) S(i,j) ≡ -8/3 (p/3)` for `p >= 5`.
    pub fn check_weighted_double_sum(&self) -> Result<CongruenceCheck> {
        self.require_at_least_5()?;
        Ok(self.check(
            "weighted-double-sum",
            self.sum_s(Weight::IPlusJ),
            self.weighted_target()?,
        ))
    }

    /// `Σ (3i+3j+1) S(i,j) ≡ -7 (p/3)`, and for `p >= 5` its recombination
    /// from the plain and `(i+j)`-weighted sums.
    pub fn check_combined_double_sum(&self) -> Vec<CongruenceCheck> {
        let combined = self.sum_s(Weight::ThreeIPlusThreeJPlusOne);
        let mut out =
            vec![self.check("combined-double-sum", combined, self.prime.legendre3() * -7)];
        if self.p() >= 5 {
            let from_parts = self.sum_s(Weight::IPlusJ) * 3 + self.sum_s(Weight::One);
            out.push(self.check("combined-from-parts", from_parts, combined));
            let target = self.weighted_target().expect("p >= 5") * 3 + self.prime.legendre3();
            out.push(self.check(
                "combined-target-from-parts",
                target,
                self.prime.legendre3() * -7,
            ));
        }
        out
    }

    /// Quadrant bookkeeping for one weight: the quadrants add up to the
    /// full sum, `S2 = S3` exactly, `S4 ≡ 0`, and the sum is `S1 + 2 S2`.
    pub fn check_decomposition(&self, weight: Weight) -> Vec<VerificationRecord> {
        let split = self.split_sums(weight);
        let p = self.p();
        let w = weight.name();
        let [s1, s2, _, s4] = split.residues(p);
        vec![
            VerificationRecord::residues(
                Suite::Split,
                format!("quadrant-total/{w}"),
                p,
                Instance::default(),
                reduce(&split.total(), p),
                self.sum_s(weight),
            ),
            VerificationRecord::new(
                Suite::Split,
                format!("quadrant-symmetry/{w}"),
                p,
                Instance::default(),
                SideValue::exact(&split.s2),
                SideValue::exact(&split.s3),
                split.s2 == split.s3,
            ),
            self.check(format!("fourth-quadrant/{w}"), s4, Residue::zero(p))
                .into_record(Suite::Split),
            self.check(
                format!("two-quadrant-recombination/{w}"),
                self.sum_s(weight),
                s1 + s2 * 2,
            )
            .into_record(Suite::Split),
        ]
    }

    fn first_quadrant_plain_form(&self) -> Residue {
        self.prime.sign_half() * 2 - self.prime.legendre3()
    }

    fn first_quadrant_weighted_form(&self) -> Result<Residue> {
        Ok(self.prime.frac(8, 3)? * self.prime.legendre3() - self.prime.sign_half() * 4)
    }

    fn second_quadrant_plain_form(&self) -> Residue {
        self.prime.legendre3() - self.prime.sign_half()
    }

    fn second_quadrant_weighted_form(&self) -> Result<Residue> {
        Ok(self.prime.sign_half() * 2 - self.prime.frac(8, 3)? * self.prime.legendre3())
    }

    /// `S1 ≡ 2(-1)^n - (p/3)` and, weighted by `i+j`, `S1 ≡ 8/3 (p/3) - 4(-1)^n`.
    pub fn check_first_quadrant(&self) -> (CongruenceCheck, Result<CongruenceCheck>) {
        let plain = self.check(
            "first-quadrant/one",
            self.split_sums(Weight::One).residues(self.p())[0],
            self.first_quadrant_plain_form(),
        );
        let weighted = self.first_quadrant_weighted_form().map(|rhs| {
            self.check(
                "first-quadrant/i+j",
                self.split_sums(Weight::IPlusJ).residues(self.p())[0],
                rhs,
            )
        });
        (plain, weighted)
    }

    /// `S2 ≡ (p/3) - (-1)^n` and, weighted by `i+j`, `S2 ≡ 2(-1)^n - 8/3 (p/3)`.
    pub fn check_second_quadrant(&self) -> (CongruenceCheck, Result<CongruenceCheck>) {
        let plain = self.check(
            "second-quadrant/one",
            self.split_sums(Weight::One).residues(self.p())[1],
            self.second_quadrant_plain_form(),
        );
        let weighted = self.second_quadrant_weighted_form().map(|rhs| {
            self.check(
                "second-quadrant/i+j",
                self.split_sums(Weight::IPlusJ).residues(self.p())[1],
                rhs,
            )
        });
        (plain, weighted)
    }

    /// Intermediate power forms of `S2`: `(-12)^n - (-4)^n` and, weighted,
    /// `((-12)^n (10n-3) + (-4)^n (3-6n)) / 3`.
    pub fn check_second_quadrant_powers(&self) -> (CongruenceCheck, Result<CongruenceCheck>) {
        let n = self.prime.half();
        let a = self.r(-12).pow(n);
        let b = self.r(-4).pow(n);
        let plain = self.check(
            "second-quadrant-powers/one",
            self.split_sums(Weight::One).residues(self.p())[1],
            a - b,
        );
        let weighted = self.prime.frac(1, 3).map(|third| {
            let n = n as i64;
            self.check(
                "second-quadrant-powers/i+j",
                self.split_sums(Weight::IPlusJ).residues(self.p())[1],
                (a * (10 * n - 3) + b * (3 - 6 * n)) * third,
            )
        });
        (plain, weighted)
    }

    /// The quadrant closed forms recombine to the theorem targets:
    /// `S1 + 2 S2` gives `(p/3)`, and `-8/3 (p/3)` with weight `i+j`.
    pub fn check_closed_form_recomposition(&self) -> (CongruenceCheck, Result<CongruenceCheck>) {
        let plain = self.check(
            "closed-form-recomposition/one",
            self.first_quadrant_plain_form() + self.second_quadrant_plain_form() * 2,
            self.prime.legendre3(),
        );
        let weighted = (|| {
            Ok(self.check(
                "closed-form-recomposition/i+j",
                self.first_quadrant_weighted_form()? + self.second_quadrant_weighted_form()? * 2,
                self.weighted_target()?,
            ))
        })();
        (plain, weighted)
    }

    /// Instance-level lemmas behind the quadrant closed forms:
    ///
    /// * `C(2i,i) ≡ (-4)^i C(n,i)` for `0 <= i <= n`;
    /// * `C(n+j,j) ≡ C(2j,j) / 4^j` for `0 <= j <= n`;
    /// * `S(i, j+n) ≡ 0` for `1 <= j <= n`, `i + j <= n`;
    /// * `S(i, j+n) ≡ (-1)^i 4^{i+j} C(j-1, n-i) / 2` for `1 <= j <= n`,
    ///   `i <= n`, `i + j >= n + 1`.
    pub fn check_pointwise_lemmas(&self) -> Vec<CongruenceCheck> {
        let p = &self.prime;
        let n = p.half();
        let pp = p.p();
        let half = p.frac(1, 2).expect("p is odd");
        let quarter = p.frac(1, 4).expect("p is odd");
        let mut out = Vec::new();
        for i in 0..=n {
            out.push(CongruenceCheck::new(
                "central-lower-half",
                pp,
                Instance::k(i),
                binom_mod(2 * i, i as i64, p),
                self.r(-4).pow(i) * binom_mod(n, i as i64, p),
            ));
        }
        for j in 0..=n {
            out.push(CongruenceCheck::new(
                "shifted-binomial",
                pp,
                Instance::j(j),
                binom_mod(n + j, j as i64, p),
                binom_mod(2 * j, j as i64, p) * quarter.pow(j),
            ));
        }
        for i in 0..=n {
            for j in 1..=n {
                let lhs = reduce(self.s(i, j + n), pp);
                if i + j <= n {
                    out.push(CongruenceCheck::new(
                        "cross-quadrant-vanishing",
                        pp,
                        Instance::ij(i, j),
                        lhs,
                        Residue::zero(pp),
                    ));
                } else {
                    let sign = if i % 2 == 0 { 1 } else { -1 };
                    let rhs = self.r(sign)
                        * self.r(4).pow(i + j)
                        * binom_mod(j - 1, n as i64 - i as i64, p)
                        * half;
                    out.push(CongruenceCheck::new(
                        "cross-quadrant-summand",
                        pp,
                        Instance::ij(i, j),
                        lhs,
                        rhs,
                    ));
                }
            }
        }
        out
    }

    /// Truncated sums and single values used to evaluate the first quadrant:
    /// `Σ_{k<=n} C_k (-3/4)^{k+1} ≡ -3/2` and `Σ_{k<=n} C(2k,k) (-3/4)^k ≡ 1`
    /// (both `p >= 5`), `C_{p-1} ≡ -1` and `C(2n,n) ≡ (-1)^n`.
    pub fn check_partial_sums(&self) -> Vec<CongruenceCheck> {
        let p = &self.prime;
        let n = p.half();
        let pp = p.p();
        let central = self.tables.central();
        let mut out = Vec::new();
        if pp >= 5 {
            let ratio = p.frac(-3, 4).expect("p is odd");
            let catalan_sum: Residue = (0..=n)
                .map(|k| reduce(central.catalan(k), pp) * ratio.pow(k + 1))
                .sum();
            out.push(self.check(
                "catalan-partial-sum",
                catalan_sum,
                p.frac(-3, 2).expect("p is odd"),
            ));
            let central_sum: Residue = (0..=n)
                .map(|k| reduce(central.central(k), pp) * ratio.pow(k))
                .sum();
            out.push(self.check("central-partial-sum", central_sum, self.r(1)));
        }
        out.push(self.check(
            "catalan-last",
            reduce(central.catalan(pp - 1), pp),
            self.r(-1),
        ));
        out.push(self.check(
            "central-middle",
            reduce(central.central(n), pp),
            p.sign_half(),
        ));
        out
    }

    /// For `q = p^e` and every `x` in `[0, p)`:
    /// `Σ_{k<q} C(2k,k) x^k ≡ (1-4x)^{(q-1)/2}` and
    /// `Σ_{k<q} C_k x^{k+1} ≡ (1 - (1-4x)^{(q+1)/2})/2 - x^q`.
    pub fn check_generating_functions(&self, e: u32) -> Result<Vec<CongruenceCheck>> {
        let pp = self.p();
        let q =
            pp.checked_pow(e)
                .filter(|&q| q <= MAX_GF_MODULUS)
                .ok_or(Error::ModulusTooLarge {
                    modulus: pp.saturating_pow(e),
                    bound: MAX_GF_MODULUS,
                })?;
        let table = self.tables.central_gf();
        assert!(
            table.len() as u64 >= q,
            "generating-function table too short"
        );
        let central: Vec<Residue> = (0..q).map(|k| reduce(table.central(k), pp)).collect();
        let catalan: Vec<Residue> = (0..q).map(|k| reduce(table.catalan(k), pp)).collect();
        let half = self.prime.frac(1, 2).expect("p is odd");
        let horner = |coeffs: &[Residue], x: Residue| {
            coeffs
                .iter()
                .rev()
                .fold(Residue::zero(pp), |acc, &c| acc * x + c)
        };
        let mut out = Vec::with_capacity(2 * pp as usize);
        for xv in 0..pp {
            let x = self.r(xv as i64);
            let base = self.r(1) - x * 4;
            let instance = Instance {
                x: Some(xv),
                e: Some(e),
                ..Default::default()
            };
            out.push(CongruenceCheck::new(
                "central-generating-function",
                pp,
                instance,
                horner(&central, x),
                base.pow((q - 1) / 2),
            ));
            out.push(CongruenceCheck::new(
                "catalan-generating-function",
                pp,
                instance,
                horner(&catalan, x) * x,
                (self.r(1) - base.pow(q.div_ceil(2))) * half - x.pow(q),
            ));
        }
        Ok(out)
    }

    /// `C(2k,k)` against the coefficient of `x^k` in `(1-4x)^{(q-1)/2}` for
    /// every `k < q`. The coefficient is `(-4)^k C((q-1)/2, k)`, taken from
    /// an expansion mod `p` for `e = 1` and by Lucas' theorem for `e = 2`.
    pub fn check_central_coefficients(&self, e: u32) -> Result<Vec<CongruenceCheck>> {
        let pp = self.p();
        let q =
            pp.checked_pow(e)
                .filter(|&q| q <= MAX_GF_MODULUS)
                .ok_or(Error::ModulusTooLarge {
                    modulus: pp.saturating_pow(e),
                    bound: MAX_GF_MODULUS,
                })?;
        let m = (q - 1) / 2;
        let coeffs: Vec<Residue> = if e == 1 {
            // (1 - 4x)^m by repeated multiplication; m < p.
            let mut poly = vec![Residue::one(pp)];
            for _ in 0..m {
                let mut next = vec![Residue::zero(pp); poly.len() + 1];
                for (d, &c) in poly.iter().enumerate() {
                    next[d] = next[d] + c;
                    next[d + 1] = next[d + 1] - c * 4;
                }
                poly = next;
            }
            (0..q)
                .map(|k| poly.get(k as usize).copied().unwrap_or(Residue::zero(pp)))
                .collect()
        } else {
            (0..q)
                .map(|k| self.r(-4).pow(k) * lucas_binom(m, k, &self.prime))
                .collect()
        };
        let table = if e == 1 {
            self.tables.central()
        } else {
            self.tables.central_gf()
        };
        let equation = if e == 1 {
            "central-coefficients"
        } else {
            "central-coefficients-p2"
        };
        Ok((0..q)
            .map(|k| {
                let mut instance = Instance::k(k);
                instance.e = Some(e);
                CongruenceCheck::new(
                    equation,
                    pp,
                    instance,
                    reduce(table.central(k), pp),
                    coeffs[k as usize],
                )
            })
            .collect())
    }

    /// `Σ_{k<p} C(2k,k) ≡ (p/3)` and `Σ_{k<p} C_k ≡ 3/2 (p/3) - 1/2`, both
    /// mod `p²`, for `p >= 5`.
    pub fn check_mod_p_squared(&self) -> Result<(CongruenceCheck, CongruenceCheck)> {
        self.require_at_least_5()?;
        let pp = self.p();
        let m = pp * pp;
        let central = self.tables.central();
        let central_sum: BigInt = (0..pp).map(|k| central.central(k)).sum();
        let catalan_sum: BigInt = (0..pp).map(|k| central.catalan(k)).sum();
        let legendre = Residue::new(crate::modular::legendre3(pp), m);
        let half = Residue::new(2, m).inverse()?;
        let catalan_target = (legendre * 3 - Residue::one(m)) * half;
        Ok((
            CongruenceCheck::new(
                "central-sum-mod-p2",
                pp,
                Instance::default(),
                reduce(&central_sum, m),
                legendre,
            ),
            CongruenceCheck::new(
                "catalan-sum-mod-p2",
                pp,
                Instance::default(),
                reduce(&catalan_sum, m),
                catalan_target,
            ),
        ))
    }
}

/// Folds per-coefficient checks into a single record: the sides are the
/// number of agreeing coefficients and the number checked, and a failure
/// points at the first disagreeing `k`.
pub fn coefficientwise_record(
    suite: Suite,
    prime: u64,
    checks: &[CongruenceCheck],
) -> VerificationRecord {
    let agreeing = checks.iter().filter(|c| c.pass).count();
    let equation = checks
        .first()
        .map_or("central-coefficients", |c| c.equation.as_str());
    let instance = checks
        .first()
        .map(|c| Instance {
            k: None,
            ..c.instance
        })
        .unwrap_or_default();
    let mut rec = VerificationRecord::new(
        suite,
        equation,
        prime,
        instance,
        SideValue::exact(agreeing),
        SideValue::exact(checks.len()),
        agreeing == checks.len(),
    );
    if let (Some(w), Some(first_bad)) = (rec.witness.as_mut(), checks.iter().find(|c| !c.pass)) {
        w.instance = first_bad.instance;
        w.lhs = first_bad.lhs.to_string();
        w.rhs = first_bad.rhs.to_string();
    }
    rec
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::super_catalan;

    fn tables() -> Tables {
        Tables::new(100)
    }

    #[test]
    fn exact_sums_at_three() {
        let t = tables();
        let c = PrimeChecks::new(&t, 3).unwrap();
        assert_eq!(c.exact_sum(Weight::One), &BigInt::from(33));
        assert_eq!(c.exact_sum(Weight::IPlusJ), &BigInt::from(80));
        assert_eq!(
            c.exact_sum(Weight::ThreeIPlusThreeJPlusOne),
            &BigInt::from(273)
        );
        assert_eq!(c.sum_s(Weight::One).value(), 0);
        assert_eq!(c.sum_s(Weight::IPlusJ).value(), 2);
    }

    #[test]
    fn exact_sum_matches_direct_formula() {
        let t = tables();
        for p in [5u64, 7, 11] {
            let c = PrimeChecks::new(&t, p).unwrap();
            for w in Weight::ALL {
                let direct: BigInt = (0..p)
                    .flat_map(|i| (0..p).map(move |j| (i, j)))
                    .map(|(i, j)| super_catalan(i, j) * w.factor(i, j))
                    .sum();
                assert_eq!(c.exact_sum(w), &direct);
            }
        }
        let c = PrimeChecks::new(&t, 5).unwrap();
        assert_eq!(c.sum_s(Weight::One).value(), 4);
    }

    #[test]
    fn main_congruences_small_primes() {
        let t = tables();
        for p in [3u64, 5, 7, 11] {
            let c = PrimeChecks::new(&t, p).unwrap();
            assert!(c.check_double_sum().pass, "p={p}");
            assert!(
                c.check_combined_double_sum().iter().all(|k| k.pass),
                "p={p}"
            );
        }
        let c7 = PrimeChecks::new(&t, 7).unwrap();
        assert_eq!(c7.check_double_sum().lhs.value(), 1);
        let c5 = PrimeChecks::new(&t, 5).unwrap();
        let w5 = c5.check_weighted_double_sum().unwrap();
        assert!(w5.pass);
        assert_eq!(w5.rhs.value(), 1);
        assert!(
            PrimeChecks::new(&t, 7)
                .unwrap()
                .check_weighted_double_sum()
                .unwrap()
                .pass
        );
        let combined5 = &c5.check_combined_double_sum()[0];
        assert_eq!(combined5.rhs.value(), 2);
    }

    #[test]
    fn weighted_rejects_three() {
        let t = tables();
        let c = PrimeChecks::new(&t, 3).unwrap();
        assert_eq!(
            c.check_weighted_double_sum(),
            Err(Error::PrimeTooSmall { p: 3, min: 5 })
        );
        assert_eq!(c.check_combined_double_sum().len(), 1);
        assert!(c.check_mod_p_squared().is_err());
        assert!(matches!(
            c.check_first_quadrant().1,
            Err(Error::DenominatorDivisibleByP { p: 3 })
        ));
        assert!(c.check_second_quadrant().1.is_err());
    }

    #[test]
    fn quadrants_at_five_and_seven() {
        let t = tables();
        let c5 = PrimeChecks::new(&t, 5).unwrap();
        let s = c5.split_sums(Weight::One);
        assert_eq!(s.s2, s.s3);
        let [s1, s2, _, s4] = s.residues(5);
        assert!(s4.is_zero());
        assert_eq!(s1.value(), 3);
        assert_eq!(s2.value(), 3);

        let c7 = PrimeChecks::new(&t, 7).unwrap();
        let [s1, s2, _, s4] = c7.split_sums(Weight::One).residues(7);
        assert!(s4.is_zero());
        assert_eq!(s1.value(), 4);
        assert_eq!(s2.value(), 2);
        assert_eq!(s1 + s2 * 2, c7.sum_s(Weight::One));
        assert!(c7.check_first_quadrant().1.unwrap().pass);
        assert!(c5.check_second_quadrant().1.unwrap().pass);
    }

    #[test]
    fn pointwise_lemma_ranges_at_five() {
        let t = tables();
        let c = PrimeChecks::new(&t, 5).unwrap();
        let checks = c.check_pointwise_lemmas();
        assert!(checks.iter().all(|k| k.pass));
        let summand_21 = checks
            .iter()
            .find(|k| k.instance == Instance::ij(2, 1))
            .unwrap();
        assert_eq!(summand_21.equation, "cross-quadrant-summand");
        let lower = checks
            .iter()
            .find(|k| k.equation == "central-lower-half" && k.instance == Instance::k(2))
            .unwrap();
        assert_eq!((lower.lhs.value(), lower.rhs.value()), (1, 1));
        // n = 2: i in 0..=2, j in 1..=2
        let n_pairs = checks.iter().filter(|k| k.instance.i.is_some()).count();
        assert_eq!(n_pairs, 6);
    }

    #[test]
    fn partial_sums_examples() {
        let t = tables();
        let c5 = PrimeChecks::new(&t, 5).unwrap();
        let last = c5
            .check_partial_sums()
            .into_iter()
            .find(|k| k.equation == "catalan-last")
            .unwrap();
        assert_eq!(last.lhs.value(), 4);
        let c7 = PrimeChecks::new(&t, 7).unwrap();
        let checks = c7.check_partial_sums();
        assert!(checks.iter().all(|k| k.pass));
        let mid = checks
            .iter()
            .find(|k| k.equation == "central-middle")
            .unwrap();
        assert_eq!(mid.lhs.value(), 6);
        let c3 = PrimeChecks::new(&t, 3).unwrap();
        let eqs: Vec<_> = c3
            .check_partial_sums()
            .into_iter()
            .map(|k| k.equation)
            .collect();
        assert_eq!(eqs, ["catalan-last", "central-middle"]);
    }

    #[test]
    fn generating_functions_at_five() {
        let t = tables();
        let c = PrimeChecks::new(&t, 5).unwrap();
        let checks = c.check_generating_functions(1).unwrap();
        assert_eq!(checks.len(), 10);
        assert!(checks.iter().all(|k| k.pass));
        let at = |eq: &str, x: u64| {
            checks
                .iter()
                .find(|k| k.equation == eq && k.instance.x == Some(x))
                .unwrap()
                .clone()
        };
        assert_eq!(at("central-generating-function", 1).lhs.value(), 4);
        assert_eq!(at("catalan-generating-function", 1).lhs.value(), 3);
        assert_eq!(at("central-generating-function", 0).lhs.value(), 1);
        assert!(c
            .check_generating_functions(2)
            .unwrap()
            .iter()
            .all(|k| k.pass));
        let big = PrimeChecks::new(&t, 101).err();
        assert!(big.is_some());
    }

    #[test]
    fn generating_function_modulus_bound() {
        let t = Tables::new(103);
        let c = PrimeChecks::new(&t, 101).unwrap();
        assert!(matches!(
            c.check_generating_functions(2),
            Err(Error::ModulusTooLarge { modulus: 10201, .. })
        ));
        assert!(c.check_generating_functions(1).is_ok());
    }

    #[test]
    fn central_coefficients_small() {
        let t = tables();
        for p in [3u64, 5, 7] {
            let c = PrimeChecks::new(&t, p).unwrap();
            let checks = c.check_central_coefficients(1).unwrap();
            assert_eq!(checks.len() as u64, p);
            assert!(checks.iter().all(|k| k.pass), "p={p}");
        }
        let c5 = PrimeChecks::new(&t, 5).unwrap();
        let checks = c5.check_central_coefficients(1).unwrap();
        assert_eq!((checks[1].lhs.value(), checks[1].rhs.value()), (2, 2));
        assert_eq!(checks[3].lhs.value(), 0);

        let rec = coefficientwise_record(Suite::Mt, 5, &checks);
        assert!(rec.pass);
        assert_eq!(
            (rec.lhs.canonical.as_str(), rec.rhs.canonical.as_str()),
            ("5", "5")
        );
        assert_eq!(rec.instance.e, Some(1));

        let mut broken = checks.clone();
        broken[2].rhs = broken[2].rhs + Residue::one(5);
        broken[2].pass = false;
        let rec = coefficientwise_record(Suite::Mt, 5, &broken);
        assert!(!rec.pass);
        assert_eq!(rec.witness.unwrap().instance.k, Some(2));
    }

    #[test]
    fn central_coefficients_mod_p_squared() {
        let t = tables();
        for p in [3u64, 5, 7, 11] {
            let c = PrimeChecks::new(&t, p).unwrap();
            let checks = c.check_central_coefficients(2).unwrap();
            assert_eq!(checks.len() as u64, p * p);
            assert!(checks.iter().all(|k| k.pass), "p={p}");
        }
    }

    #[test]
    fn mod_p_squared_at_five() {
        let t = tables();
        let c = PrimeChecks::new(&t, 5).unwrap();
        let (central, catalan) = c.check_mod_p_squared().unwrap();
        assert_eq!((central.lhs.value(), central.rhs.value()), (24, 24));
        assert_eq!((catalan.lhs.value(), catalan.rhs.value()), (23, 23));
        assert_eq!(central.lhs.modulus(), 25);
    }
}
