use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),

    #[error("denominator is divisible by {p}; the residue is undefined")]
    DenominatorDivisibleByP { p: u64 },

    #[error("{value} is not invertible modulo {modulus}")]
    NotInvertible { value: u64, modulus: u64 },

    #[error("prime {p} is below the minimum {min} required by this congruence")]
    PrimeTooSmall { p: u64, min: u64 },

    #[error("modulus {modulus} exceeds the supported bound {bound}")]
    ModulusTooLarge { modulus: u64, bound: u64 },

    #[error("zero raised to a negative power")]
    ZeroToNegativePower,

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}
