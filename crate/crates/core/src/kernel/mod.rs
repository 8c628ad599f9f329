//! Graded commutative polynomial arithmetic with Koszul signs.
//!
//! Generators carry a non-negative degree; their parity (degree mod 2)
//! decides the sign of every transposition. Monomials are kept in table
//! order, so equality of polynomials is equality of their term maps.

mod base;
mod derivation;
pub(crate) mod expr;
mod poly;
mod rational;
mod table;

pub use base::BasePoly;
pub use derivation::Derivation;
pub use poly::{GradedPoly, Monomial};
pub use rational::{format_rational, frac, int, parse_rational, Rational};
pub use table::{same_table, Generator, GeneratorTable};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KernelError {
    #[error("operands live over different generator tables")]
    TableMismatch,
    #[error("duplicate generator name `{0}`")]
    DuplicateGenerator(String),
    #[error("invalid generator name `{0}`")]
    InvalidName(String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),
    #[error("missing generator image: {0}")]
    MissingImage(String),
    #[error("parse error: {0}")]
    Parse(String),
}
