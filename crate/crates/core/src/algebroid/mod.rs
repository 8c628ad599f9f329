//! Hamiltonians `theta_H` built from Lie algebroid data, the master
//! equation, `d_A`, and the two brackets on `A + wedge^{k-1} A*`.

mod brackets;
mod data;
mod master;
mod theta;

pub use brackets::{cartan_bracket, derived_bracket};
pub use data::{LieAlgebroidData, Pairing};
pub use master::{check_master, check_q3_conditions, split_theta, ThetaParts};
pub use theta::{build_theta, d_a, interior, lie_derivative};

use thiserror::Error;

use crate::kernel::KernelError;
use crate::symplectic::SymplecticError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebroidError {
    #[error(transparent)]
    Kernel(#[from] KernelError),
    #[error(transparent)]
    Symplectic(#[from] SymplecticError),
    #[error("shape error: {0}")]
    Shape(String),
    #[error("structure functions not antisymmetric at c^{c}_{{{a}{b}}}")]
    NotAntisymmetric { a: usize, b: usize, c: usize },
    #[error("pairing not symmetric at ({0}, {1})")]
    NotSymmetric(usize, usize),
    #[error("data does not match the chart: {0}")]
    ChartMismatch(String),
    #[error("a pairing is only meaningful for k = 3")]
    PairingNeedsK3,
    #[error("expected degree {expected}, got {got}")]
    Degree { expected: u32, got: String },
    #[error("not a pure form: {0}")]
    NotAForm(String),
}
