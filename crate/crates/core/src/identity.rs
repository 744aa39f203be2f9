//! Exact rational verification of the two double-sum identities and of the
//! third-order recurrences annihilating them.
//!
//! The "plain" identity is
//!
//! ```text
//! Σ_{i,j=0}^{n} (-4)^{i+j} C(n,i) C(n,j) / C(i+j,i)
//!   = (-3)^n (2n-1) / (4(n+1)) + 4^n / C(2n,n) · (1/2 - Σ_{k=0}^{n} C_k (-3/4)^{k+1})
//! ```
//!
//! and the "weighted" one carries an extra factor `(i+j)` on the left:
//!
//! ```text
//!   = 16n (-3)^{n-1} + 8n 4^n / C(2n,n) · Σ_{k=0}^{n} C(2k,k) (-3/4)^k
//! ```

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::exact::{
    catalan, central_binomial, int_rat, lcm_upto, rat, rat_pow, ExactRat, PascalCache,
};
use crate::record::{Instance, SideValue, Suite, VerificationRecord};

/// `Σ_{i,j=0}^{n} w(i,j) (-4)^{i+j} C(n,i) C(n,j) / C(i+j,i)`, summed over the
/// common denominator `lcm(1..=2n+1)`, which every `C(s,i)` with `s <= 2n`
/// divides.
fn weighted_double_sum(n: u64, weight: impl Fn(u64, u64) -> i64) -> ExactRat {
    let pascal = PascalCache::new(2 * n);
    let common = lcm_upto(2 * n + 1);
    let row_n = pascal.row(n).expect("row n built");
    let mut total = BigInt::zero();
    for i in 0..=n {
        for j in 0..=n {
            let w = weight(i, j);
            if w == 0 {
                continue;
            }
            let den = &pascal.row(i + j).expect("row i+j built")[i as usize];
            let (scale, r) = common.div_rem(den);
            debug_assert!(r.is_zero());
            let mut term = &row_n[i as usize] * &row_n[j as usize] * scale * w;
            term <<= 2 * (i + j) as usize;
            if (i + j) % 2 == 1 {
                term = -term;
            }
            total += term;
        }
    }
    BigRational::new(total, common)
}

pub fn plain_lhs(n: u64) -> ExactRat {
    weighted_double_sum(n, |_, _| 1)
}

pub fn plain_rhs(n: u64) -> ExactRat {
    let n_i = n as i64;
    let first = rat_pow(&rat(-3, 1), n_i).expect("nonzero base") * rat(2 * n_i - 1, 4 * (n_i + 1));
    let tail = (0..=n)
        .map(|k| int_rat(catalan(k)) * rat_pow(&rat(-3, 4), k as i64 + 1).expect("nonzero base"))
        .fold(ExactRat::zero(), |acc, t| acc + t);
    let scale = BigRational::new(BigInt::one() << (2 * n) as usize, central_binomial(n));
    first + scale * (rat(1, 2) - tail)
}

pub fn weighted_lhs(n: u64) -> ExactRat {
    weighted_double_sum(n, |i, j| (i + j) as i64)
}

pub fn weighted_rhs(n: u64) -> ExactRat {
    // Both terms carry the factor n; (-3)^{n-1} is never formed at n = 0.
    if n == 0 {
        return ExactRat::zero();
    }
    let n_i = n as i64;
    let first = rat(16 * n_i, 1) * rat_pow(&rat(-3, 1), n_i - 1).expect("nonzero base");
    let tail = (0..=n)
        .map(|k| {
            int_rat(central_binomial(k)) * rat_pow(&rat(-3, 4), k as i64).expect("nonzero base")
        })
        .fold(ExactRat::zero(), |acc, t| acc + t);
    let scale = BigRational::new(BigInt::from(8 * n) << (2 * n) as usize, central_binomial(n));
    first + scale * tail
}

/// Returns `(direct, closed)` for the inner sum
/// `Σ_{i=0}^{n} (2n+j-i) C(j-1,i) (-1/4)^i` and its closed form
/// `(2n+j)(3/4)^{j-1} + (j-1)/4 · (3/4)^{j-2}`. Requires `1 <= j <= n`.
pub fn inner_sum_pair(n: u64, j: u64) -> (ExactRat, ExactRat) {
    assert!(1 <= j && j <= n, "inner sum needs 1 <= j <= n");
    let (n_i, j_i) = (n as i64, j as i64);
    let direct = (0..=n)
        .map(|i| {
            let c = crate::exact::binomial(j - 1, i as i64);
            int_rat(c)
                * rat(2 * n_i + j_i - i as i64, 1)
                * rat_pow(&rat(-1, 4), i as i64).expect("nonzero base")
        })
        .fold(ExactRat::zero(), |acc, t| acc + t);
    let mut closed = rat(2 * n_i + j_i, 1) * rat_pow(&rat(3, 4), j_i - 1).expect("nonzero base");
    if j > 1 {
        closed += rat(j_i - 1, 4) * rat_pow(&rat(3, 4), j_i - 2).expect("nonzero base");
    }
    (direct, closed)
}

/// A named sequence `n -> ExactRat`, total on `n >= 0`.
#[derive(Clone, Copy)]
pub struct IdentitySide {
    pub name: &'static str,
    pub eval: fn(u64) -> ExactRat,
}

impl IdentitySide {
    pub fn at(&self, n: u64) -> ExactRat {
        (self.eval)(n)
    }

    /// Values for `0..=upto`, evaluated in parallel.
    pub fn values(&self, upto: u64) -> Vec<ExactRat> {
        (0..=upto).into_par_iter().map(self.eval).collect()
    }
}

impl std::fmt::Debug for IdentitySide {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("IdentitySide")
            .field("name", &self.name)
            .finish()
    }
}

/// `Σ_{j=0}^{3} coeff(j, n) s(n+j) = 0`, each coefficient a polynomial in `n`
/// listed from the constant term up.
#[derive(Debug, Clone, Copy)]
pub struct RecurrenceSpec {
    pub name: &'static str,
    pub coeffs: [&'static [i64]; 4],
}

impl RecurrenceSpec {
    pub const ORDER: usize = 3;

    pub fn coeff(&self, j: usize, n: u64) -> BigInt {
        let n = BigInt::from(n);
        self.coeffs[j]
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, &c| acc * &n + c)
    }

    /// `Σ_j coeff(j, n) s(n+j)` over a window whose first element is `s(n)`.
    pub fn apply(&self, n: u64, window: &[ExactRat]) -> ExactRat {
        (0..=Self::ORDER)
            .map(|j| int_rat(self.coeff(j, n)) * &window[j])
            .fold(ExactRat::zero(), |acc, t| acc + t)
    }
}

/// `-18(n+1)s(n) + 3(2n-5)s(n+1) + 2(5n+6)s(n+2) + (2n+5)s(n+3) = 0`
pub const PLAIN_RECURRENCE: RecurrenceSpec = RecurrenceSpec {
    name: "plain-recurrence",
    coeffs: [&[-18, -18], &[-15, 6], &[12, 10], &[5, 2]],
};

/// `-6(n+1)(581n+793)s(n) + (818n²-6653n-9936)s(n+1)
///  + (2166n²+3474n+2898)s(n+2) + (2n+5)(251n+92)s(n+3) = 0`
pub const WEIGHTED_RECURRENCE: RecurrenceSpec = RecurrenceSpec {
    name: "weighted-recurrence",
    coeffs: [
        &[-4758, -8244, -3486],
        &[-9936, -6653, 818],
        &[2898, 3474, 2166],
        &[460, 1439, 502],
    ],
};

#[derive(Debug, Clone, Copy)]
pub struct Identity {
    pub name: &'static str,
    pub suite: Suite,
    pub lhs: IdentitySide,
    pub rhs: IdentitySide,
    pub recurrence: RecurrenceSpec,
}

pub const PLAIN: Identity = Identity {
    name: "plain-identity",
    suite: Suite::IdentityB1,
    lhs: IdentitySide {
        name: "lhs",
        eval: plain_lhs,
    },
    rhs: IdentitySide {
        name: "rhs",
        eval: plain_rhs,
    },
    recurrence: PLAIN_RECURRENCE,
};

pub const WEIGHTED: Identity = Identity {
    name: "weighted-identity",
    suite: Suite::IdentityC1,
    lhs: IdentitySide {
        name: "lhs",
        eval: weighted_lhs,
    },
    rhs: IdentitySide {
        name: "rhs",
        eval: weighted_rhs,
    },
    recurrence: WEIGHTED_RECURRENCE,
};

fn exact_record(
    suite: Suite,
    equation: String,
    n: u64,
    instance: Instance,
    lhs: &ExactRat,
    rhs: &ExactRat,
) -> VerificationRecord {
    VerificationRecord::new(
        suite,
        equation,
        n,
        instance,
        SideValue::exact(lhs),
        SideValue::exact(rhs),
        lhs == rhs,
    )
}

/// One record per `n` in `0..=n_max`, passing on exact equality.
pub fn check_identity(identity: &Identity, n_max: u64) -> Vec<VerificationRecord> {
    let lhs = identity.lhs.values(n_max);
    let rhs = identity.rhs.values(n_max);
    (0..=n_max)
        .map(|n| {
            let (l, r) = (&lhs[n as usize], &rhs[n as usize]);
            exact_record(
                identity.suite,
                identity.name.to_string(),
                n,
                Instance::default(),
                l,
                r,
            )
        })
        .collect()
}

/// Checks the recurrence on `values`, which must hold `s(0..=n_max+3)`.
fn recurrence_records(
    rec: &RecurrenceSpec,
    seq_name: &str,
    values: &[ExactRat],
    n_max: u64,
) -> Vec<VerificationRecord> {
    assert!(values.len() as u64 >= n_max + 4);
    (0..=n_max)
        .map(|n| {
            let total = rec.apply(n, &values[n as usize..n as usize + 4]);
            exact_record(
                Suite::Recurrences,
                format!("{}/{}", rec.name, seq_name),
                n,
                Instance::default(),
                &total,
                &ExactRat::zero(),
            )
        })
        .collect()
}

/// One record per `n` in `0..=n_max`, passing iff the recurrence sums to zero
/// exactly at `n`.
pub fn check_recurrence(
    seq: &IdentitySide,
    rec: &RecurrenceSpec,
    n_max: u64,
) -> Vec<VerificationRecord> {
    recurrence_records(rec, seq.name, &seq.values(n_max + 3), n_max)
}

/// Extends `s(0), s(1), s(2)` through the recurrence, dividing by the leading
/// coefficient, to `len` terms.
pub fn forward_substitute(
    rec: &RecurrenceSpec,
    initial: [ExactRat; 3],
    len: usize,
) -> Vec<ExactRat> {
    let mut out: Vec<ExactRat> = initial.into_iter().take(len).collect();
    while out.len() < len {
        let n = (out.len() - 3) as u64;
        let lead = rec.coeff(3, n);
        assert!(
            lead.is_positive(),
            "{}: leading coefficient vanishes at {n}",
            rec.name
        );
        let partial = (0..3)
            .map(|j| int_rat(rec.coeff(j, n)) * &out[n as usize + j])
            .fold(ExactRat::zero(), |acc, t| acc + t);
        out.push(-partial / int_rat(lead));
    }
    out
}

/// Runs both sides of `identity` through its recurrence, and checks that the
/// recurrence seeded with the left side's first three values reproduces it.
pub fn check_identity_recurrences(identity: &Identity, n_max: u64) -> Vec<VerificationRecord> {
    let rec = &identity.recurrence;
    let lhs = identity.lhs.values(n_max + 3);
    let rhs = identity.rhs.values(n_max + 3);
    let mut records = recurrence_records(rec, "lhs", &lhs, n_max);
    records.extend(recurrence_records(rec, "rhs", &rhs, n_max));

    let seeded = forward_substitute(
        rec,
        [lhs[0].clone(), lhs[1].clone(), lhs[2].clone()],
        n_max as usize + 1,
    );
    records.extend((0..=n_max).map(|n| {
        exact_record(
            Suite::Recurrences,
            format!("{}/unique", rec.name),
            n,
            Instance::default(),
            &lhs[n as usize],
            &seeded[n as usize],
        )
    }));
    records
}

/// Closed form of the inner sum for all `1 <= j <= n <= n_max`.
pub fn check_inner_sums(n_max: u64) -> Vec<VerificationRecord> {
    let pairs: Vec<(u64, u64)> = (1..=n_max)
        .flat_map(|n| (1..=n).map(move |j| (n, j)))
        .collect();
    pairs
        .into_par_iter()
        .map(|(n, j)| {
            let (direct, closed) = inner_sum_pair(n, j);
            exact_record(
                Suite::IdentityC1,
                "inner-sum-closed-form".to_string(),
                n,
                Instance::j(j),
                &direct,
                &closed,
            )
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{binomial, rat};

    /// Term-by-term rational sum, independent of the common-denominator path.
    fn brute_double_sum(n: u64, weighted: bool) -> ExactRat {
        let mut acc = ExactRat::zero();
        for i in 0..=n {
            for j in 0..=n {
                let w = if weighted { (i + j) as i64 } else { 1 };
                let num = binomial(n, i as i64) * binomial(n, j as i64) * w;
                let sign_pow = rat_pow(&rat(-4, 1), (i + j) as i64).unwrap();
                acc += sign_pow * BigRational::new(num, binomial(i + j, i as i64));
            }
        }
        acc
    }

    #[test]
    fn plain_examples() {
        assert_eq!(plain_lhs(0), rat(1, 1));
        assert_eq!(plain_lhs(1), rat(1, 1));
        assert_eq!(plain_rhs(0), rat(1, 1));
        assert_eq!(plain_rhs(1), rat(1, 1));
        assert_eq!(plain_lhs(2), plain_rhs(2));
    }

    #[test]
    fn weighted_examples() {
        assert_eq!(weighted_lhs(0), rat(0, 1));
        assert_eq!(weighted_lhs(1), rat(8, 1));
        assert_eq!(weighted_rhs(0), rat(0, 1));
        assert_eq!(weighted_rhs(1), rat(8, 1));
        assert_eq!(weighted_lhs(2), weighted_rhs(2));
        assert_eq!(weighted_lhs(3), weighted_rhs(3));
    }

    #[test]
    fn double_sum_matches_brute_force() {
        for n in 0..=12 {
            assert_eq!(plain_lhs(n), brute_double_sum(n, false), "n={n}");
            assert_eq!(weighted_lhs(n), brute_double_sum(n, true), "n={n}");
        }
    }

    #[test]
    fn inner_sum_examples() {
        assert_eq!(inner_sum_pair(2, 2), (rat(19, 4), rat(19, 4)));
        assert_eq!(inner_sum_pair(1, 1), (rat(3, 1), rat(3, 1)));
        let (d, c) = inner_sum_pair(5, 3);
        assert_eq!(d, c);
    }

    #[test]
    fn recurrence_coefficients_expand_correctly() {
        for n in 0..20i64 {
            let nb = n as u64;
            let p = PLAIN_RECURRENCE;
            assert_eq!(p.coeff(0, nb), BigInt::from(-18 * (n + 1)));
            assert_eq!(p.coeff(1, nb), BigInt::from(3 * (2 * n - 5)));
            assert_eq!(p.coeff(2, nb), BigInt::from(2 * (5 * n + 6)));
            assert_eq!(p.coeff(3, nb), BigInt::from(5 + 2 * n));
            let w = WEIGHTED_RECURRENCE;
            assert_eq!(w.coeff(0, nb), BigInt::from(-6 * (n + 1) * (581 * n + 793)));
            assert_eq!(w.coeff(1, nb), BigInt::from(818 * n * n - 6653 * n - 9936));
            assert_eq!(w.coeff(2, nb), BigInt::from(2166 * n * n + 3474 * n + 2898));
            assert_eq!(w.coeff(3, nb), BigInt::from((2 * n + 5) * (251 * n + 92)));
        }
    }

    #[test]
    fn base_cases_pass() {
        let recs = check_identity(&PLAIN, 2);
        assert_eq!(recs.len(), 3);
        assert!(recs.iter().all(|r| r.pass));
        let recs = check_identity(&WEIGHTED, 0);
        assert_eq!(recs.len(), 1);
        assert!(recs[0].pass);
    }

    #[test]
    fn recurrences_annihilate_small_window() {
        for seq in [PLAIN.lhs, PLAIN.rhs] {
            let recs = check_recurrence(&seq, &PLAIN_RECURRENCE, 10);
            assert_eq!(recs.len(), 11);
            assert!(recs.iter().all(|r| r.pass));
        }
        for seq in [WEIGHTED.lhs, WEIGHTED.rhs] {
            let recs = check_recurrence(&seq, &WEIGHTED_RECURRENCE, 10);
            assert!(recs.iter().all(|r| r.pass));
        }
    }

    #[test]
    fn wrong_recurrence_is_detected() {
        let broken = RecurrenceSpec {
            name: "broken",
            coeffs: [&[-18, -18], &[-15, 6], &[12, 10], &[6, 2]],
        };
        let recs = check_recurrence(&PLAIN.lhs, &broken, 5);
        assert!(recs.iter().any(|r| !r.pass));
        assert!(recs.iter().filter(|r| !r.pass).all(|r| r.witness.is_some()));
    }

    #[test]
    fn forward_substitution_keeps_short_prefixes() {
        let init = [rat(1, 1), rat(1, 1), plain_lhs(2)];
        assert_eq!(
            forward_substitute(&PLAIN_RECURRENCE, init.clone(), 2).len(),
            2
        );
        let ext = forward_substitute(&PLAIN_RECURRENCE, init, 8);
        for (n, v) in ext.iter().enumerate() {
            assert_eq!(v, &plain_lhs(n as u64));
        }
    }

    #[test]
    fn inner_sums_small_window() {
        let recs = check_inner_sums(6);
        assert_eq!(recs.len(), 21);
        assert!(recs.iter().all(|r| r.pass));
    }
}
