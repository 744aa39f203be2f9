//! Runs the selected suites over a prime range and identity window.

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::congruence::{
    coefficientwise_record, CongruenceCheck, PrimeChecks, Tables, Weight, MAX_GF_MODULUS,
};
use crate::error::{Error, Result};
use crate::identity;
use crate::modular::odd_primes_in;
use crate::record::{Instance, Suite, VerificationRecord};
use crate::report::{OutputFormat, Report};

pub const PRIME_LIMIT: u64 = 10_000;
pub const IDENTITY_N_LIMIT: u64 = 200;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanConfig {
    pub prime_min: u64,
    pub prime_max: u64,
    /// Upper bound for the suites with O(p²) instances per prime
    /// (`split`, `lemmas`, `mt`, `sun_tauraso`).
    pub lemma_prime_max: u64,
    pub suites: BTreeSet<Suite>,
    pub identity_n_max: u64,
    pub parallelism: usize,
    pub output_format: OutputFormat,
    pub output_path: Option<PathBuf>,
    pub self_test: bool,
}

impl Default for ScanConfig {
    fn default() -> Self {
        ScanConfig {
            prime_min: 3,
            prime_max: 299,
            lemma_prime_max: 99,
            suites: Suite::ALL.into_iter().collect(),
            identity_n_max: 60,
            parallelism: std::thread::available_parallelism().map_or(1, |n| n.get()),
            output_format: OutputFormat::Text,
            output_path: None,
            self_test: false,
        }
    }
}

impl ScanConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidConfig(msg));
        if !(3 <= self.prime_min
            && self.prime_min <= self.prime_max
            && self.prime_max <= PRIME_LIMIT)
        {
            return bad(format!(
                "prime range {}..{} must satisfy 3 <= min <= max <= {PRIME_LIMIT}",
                self.prime_min, self.prime_max
            ));
        }
        if self.identity_n_max > IDENTITY_N_LIMIT {
            return bad(format!(
                "identity window {} exceeds {IDENTITY_N_LIMIT}",
                self.identity_n_max
            ));
        }
        if self.parallelism == 0 {
            return bad("parallelism must be at least 1".into());
        }
        Ok(())
    }

    fn prime_limit_for(&self, suite: Suite) -> u64 {
        match suite {
            Suite::Split | Suite::Lemmas | Suite::Mt | Suite::SunTauraso => {
                self.prime_max.min(self.lemma_prime_max)
            }
            _ => self.prime_max,
        }
    }
}

fn push_checks(
    out: &mut Vec<VerificationRecord>,
    suite: Suite,
    checks: impl IntoIterator<Item = CongruenceCheck>,
) {
    out.extend(checks.into_iter().map(|c| c.into_record(suite)));
}

/// Checks whose preconditions exclude this prime (`p = 3` for statements
/// with a denominator 3) produce no record.
fn push_optional(out: &mut Vec<VerificationRecord>, suite: Suite, check: Result<CongruenceCheck>) {
    if let Ok(c) = check {
        out.push(c.into_record(suite));
    }
}

fn prime_records(config: &ScanConfig, tables: &Tables, p: u64) -> Result<Vec<VerificationRecord>> {
    let checks = PrimeChecks::new(tables, p)?;
    let mut out = Vec::new();
    let active =
        |suite: Suite| config.suites.contains(&suite) && p <= config.prime_limit_for(suite);

    if active(Suite::Thm11) {
        out.push(checks.check_double_sum().into_record(Suite::Thm11));
    }
    if active(Suite::Thm12) {
        push_optional(&mut out, Suite::Thm12, checks.check_weighted_double_sum());
    }
    if active(Suite::Conj14) {
        push_checks(&mut out, Suite::Conj14, checks.check_combined_double_sum());
    }
    if active(Suite::Split) {
        for w in Weight::ALL {
            out.extend(checks.check_decomposition(w));
        }
        for (plain, weighted) in [
            checks.check_first_quadrant(),
            checks.check_second_quadrant(),
            checks.check_second_quadrant_powers(),
            checks.check_closed_form_recomposition(),
        ] {
            out.push(plain.into_record(Suite::Split));
            push_optional(&mut out, Suite::Split, weighted);
        }
    }
    if active(Suite::Lemmas) {
        push_checks(&mut out, Suite::Lemmas, checks.check_pointwise_lemmas());
        push_checks(&mut out, Suite::Lemmas, checks.check_partial_sums());
    }
    if active(Suite::Mt) {
        push_checks(&mut out, Suite::Mt, checks.check_generating_functions(1)?);
        out.push(coefficientwise_record(
            Suite::Mt,
            p,
            &checks.check_central_coefficients(1)?,
        ));
        if p * p <= MAX_GF_MODULUS {
            push_checks(&mut out, Suite::Mt, checks.check_generating_functions(2)?);
            // Coefficient-wise agreement for q = p² is recorded, not asserted.
            let coeffs = checks.check_central_coefficients(2)?;
            out.push(coefficientwise_record(Suite::Mt, p, &coeffs).informational());
        }
    }
    if active(Suite::SunTauraso) {
        if let Ok((central, catalan)) = checks.check_mod_p_squared() {
            out.push(central.into_record(Suite::SunTauraso));
            out.push(catalan.into_record(Suite::SunTauraso));
        }
    }
    Ok(out)
}

fn identity_records(config: &ScanConfig) -> Vec<VerificationRecord> {
    let n_max = config.identity_n_max;
    let mut out = Vec::new();
    if config.suites.contains(&Suite::IdentityB1) {
        out.extend(identity::check_identity(&identity::PLAIN, n_max));
    }
    if config.suites.contains(&Suite::IdentityC1) {
        out.extend(identity::check_identity(&identity::WEIGHTED, n_max));
        out.extend(identity::check_inner_sums(n_max));
    }
    if config.suites.contains(&Suite::Recurrences) {
        out.extend(identity::check_identity_recurrences(
            &identity::PLAIN,
            n_max,
        ));
        out.extend(identity::check_identity_recurrences(
            &identity::WEIGHTED,
            n_max,
        ));
    }
    out
}

/// A congruence that is false at every prime, `Σ S(i,j) ≡ (p/3) + 1`.
fn self_test_record(tables: &Tables, p: u64) -> Result<VerificationRecord> {
    let checks = PrimeChecks::new(tables, p)?;
    let c = checks.check_double_sum();
    Ok(VerificationRecord::residues(
        Suite::Thm11,
        "self-test/shifted-double-sum",
        p,
        Instance::default(),
        c.lhs,
        c.rhs + checks.prime().residue(1),
    ))
}

pub fn run_scan(config: &ScanConfig) -> Result<Report> {
    config.validate()?;
    let start = Instant::now();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.parallelism)
        .build()
        .map_err(|e| Error::InvalidConfig(format!("worker pool: {e}")))?;

    let primes = odd_primes_in(config.prime_min, config.prime_max);
    let wants_primes = config.suites.iter().any(|s| s.is_prime_indexed()) || config.self_test;
    let table_bound = if wants_primes {
        primes.last().copied().unwrap_or(0)
    } else {
        0
    };
    let tables = Tables::new(table_bound);

    let mut records = pool.install(|| -> Result<Vec<VerificationRecord>> {
        let per_prime: Vec<Vec<VerificationRecord>> =
            if config.suites.iter().any(|s| s.is_prime_indexed()) {
                // Largest primes first, since their cost dominates.
                primes
                    .par_iter()
                    .rev()
                    .map(|&p| prime_records(config, &tables, p))
                    .collect::<Result<_>>()?
            } else {
                Vec::new()
            };
        let mut records: Vec<VerificationRecord> = per_prime.into_iter().flatten().collect();
        records.extend(identity_records(config));
        Ok(records)
    })?;

    if config.self_test {
        if let Some(&p) = primes.first() {
            records.push(self_test_record(&tables, p)?);
        }
    }

    // Stable, so the per-prime generation order survives within a key.
    records.sort_by_key(|r| (r.suite, r.prime_or_index));
    Ok(Report::new(config.clone(), records, start.elapsed()))
}
