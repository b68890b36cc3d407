//! Exact integer, rational and integer-polynomial arithmetic.
//!
//! Everything downstream works over these types: thresholds in the stability
//! parameter are [`Rational`]s and every Poincaré polynomial is an
//! [`IntPoly`]. Nothing here ever rounds; division either succeeds exactly or
//! reports [`ExactError::NonExactDivision`].

mod poly;
mod rational;
pub mod wire;

pub use num_bigint::BigInt;
pub use poly::{cyclotomic_product, poly_div_exact, poly_mul, IntPoly};
pub use rational::{ParseRationalError, Rational};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("polynomial division leaves a nonzero remainder")]
    NonExactDivision,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("exponent {0} is not a positive integer")]
    InvalidExponent(i64),
    #[error("polynomial degree overflows the machine word")]
    DegreeOverflow,
}
