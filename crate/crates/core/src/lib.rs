//! Computes super Catalan numbers and checks congruences and identities on
//! their double sums, exactly over the integers and rationals and modulo
//! primes.

pub mod congruence;
pub mod error;
pub mod exact;
pub mod identity;
pub mod modular;
pub mod record;
pub mod report;
pub mod scan;

pub use error::{Error, Result};
