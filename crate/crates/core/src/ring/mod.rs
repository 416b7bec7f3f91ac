//! Exact arithmetic in the fraction field `Frac(Z[q^±1, r^±1])`.

mod field;
mod gcd;
mod poly;
mod render;

pub use field::FieldValue;
pub use gcd::gcd;
pub use poly::{LaurentPoly, Monomial};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("denominator vanishes at the evaluation point")]
    Pole,
    #[error("substituted expression must not involve r")]
    NotFreeOfR,
    #[error("parse error: {0}")]
    Parse(String),
}
