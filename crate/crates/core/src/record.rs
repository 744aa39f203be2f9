//! Outcome of a single check, shared by every suite and by the reports.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::Error;
use crate::modular::Residue;

/// Groups of checks selectable from the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Thm11,
    Thm12,
    Conj14,
    Split,
    Lemmas,
    Mt,
    SunTauraso,
    IdentityB1,
    IdentityC1,
    Recurrences,
}

impl Suite {
    pub const ALL: [Suite; 10] = [
        Suite::Thm11,
        Suite::Thm12,
        Suite::Conj14,
        Suite::Split,
        Suite::Lemmas,
        Suite::Mt,
        Suite::SunTauraso,
        Suite::IdentityB1,
        Suite::IdentityC1,
        Suite::Recurrences,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Thm11 => "thm11",
            Suite::Thm12 => "thm12",
            Suite::Conj14 => "conj14",
            Suite::Split => "split",
            Suite::Lemmas => "lemmas",
            Suite::Mt => "mt",
            Suite::SunTauraso => "sun_tauraso",
            Suite::IdentityB1 => "identity_b1",
            Suite::IdentityC1 => "identity_c1",
            Suite::Recurrences => "recurrences",
        }
    }

    /// Suites indexed by a prime, as opposed to an identity index `n`.
    pub fn is_prime_indexed(self) -> bool {
        !matches!(
            self,
            Suite::IdentityB1 | Suite::IdentityC1 | Suite::Recurrences
        )
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s.trim())
            .ok_or_else(|| Error::InvalidConfig(format!("unknown suite `{s}`")))
    }
}

/// Coordinates of one instance inside a check: the prime or identity index
/// plus whichever of `i`, `j`, `k`, `x` the check ranges over.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Instance {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub i: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub j: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub x: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub e: Option<u32>,
}

impl Instance {
    pub fn ij(i: u64, j: u64) -> Self {
        Instance {
            i: Some(i),
            j: Some(j),
            ..Default::default()
        }
    }

    pub fn k(k: u64) -> Self {
        Instance {
            k: Some(k),
            ..Default::default()
        }
    }

    pub fn j(j: u64) -> Self {
        Instance {
            j: Some(j),
            ..Default::default()
        }
    }

    pub fn is_empty(&self) -> bool {
        *self == Instance::default()
    }
}

impl fmt::Display for Instance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = [
            ("i", self.i),
            ("j", self.j),
            ("k", self.k),
            ("x", self.x),
            ("e", self.e.map(u64::from)),
        ]
        .into_iter()
        .filter_map(|(name, v)| v.map(|v| format!("{name}={v}")))
        .collect();
        f.write_str(&parts.join(" "))
    }
}

/// Value of one side of a check, rendered canonically.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SideValue {
    pub canonical: String,
    /// Least-absolute representative, shown when it is small.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub signed: Option<i64>,
}

impl SideValue {
    pub fn exact(value: impl fmt::Display) -> Self {
        SideValue {
            canonical: value.to_string(),
            signed: None,
        }
    }

    pub fn residue(r: Residue) -> Self {
        let s = r.signed();
        SideValue {
            canonical: r.value().to_string(),
            signed: (s != r.value() as i64 && s.abs() <= 10).then_some(s),
        }
    }
}

impl fmt::Display for SideValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.signed {
            Some(s) => write!(f, "{} (≡ {s})", self.canonical),
            None => f.write_str(&self.canonical),
        }
    }
}

/// The offending coordinates and both side values of a failed check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub prime_or_index: u64,
    #[serde(flatten)]
    pub instance: Instance,
    pub lhs: String,
    pub rhs: String,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at {}", self.prime_or_index)?;
        if !self.instance.is_empty() {
            write!(f, " {}", self.instance)?;
        }
        write!(f, ": lhs={} rhs={}", self.lhs, self.rhs)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationRecord {
    pub suite: Suite,
    pub equation: String,
    pub prime_or_index: u64,
    #[serde(skip_serializing_if = "Instance::is_empty")]
    pub instance: Instance,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub modulus: Option<u64>,
    pub lhs: SideValue,
    pub rhs: SideValue,
    pub pass: bool,
    /// Recorded for reference only; never counted as a failure.
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub informational: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl VerificationRecord {
    pub fn new(
        suite: Suite,
        equation: impl Into<String>,
        prime_or_index: u64,
        instance: Instance,
        lhs: SideValue,
        rhs: SideValue,
        pass: bool,
    ) -> Self {
        let witness = (!pass).then(|| Witness {
            prime_or_index,
            instance,
            lhs: lhs.canonical.clone(),
            rhs: rhs.canonical.clone(),
        });
        VerificationRecord {
            suite,
            equation: equation.into(),
            prime_or_index,
            instance,
            modulus: None,
            lhs,
            rhs,
            pass,
            informational: false,
            witness,
        }
    }

    /// Record comparing two residues of the same modulus.
    pub fn residues(
        suite: Suite,
        equation: impl Into<String>,
        prime_or_index: u64,
        instance: Instance,
        lhs: Residue,
        rhs: Residue,
    ) -> Self {
        let mut rec = VerificationRecord::new(
            suite,
            equation,
            prime_or_index,
            instance,
            SideValue::residue(lhs),
            SideValue::residue(rhs),
            lhs == rhs,
        );
        rec.modulus = Some(lhs.modulus());
        rec
    }

    pub fn informational(mut self) -> Self {
        self.informational = true;
        self
    }

    /// A failure that counts toward the exit status.
    pub fn is_failure(&self) -> bool {
        !self.pass && !self.informational
    }
}
