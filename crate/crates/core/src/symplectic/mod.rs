//! The chart of `T*[k]A[1]`, its degree `-k` Poisson bracket, hamiltonian
//! vector fields and the twists `tau^B`.

mod chart;
mod poisson;
mod section;
mod twist;

pub use chart::{CotangentChart, GeneratorKind};
pub use poisson::{generator_vf, hamiltonian_vf, poisson};
pub use section::{decompose_section, Section};
pub use twist::{twist, twist_images, TwistCochain};

use thiserror::Error;

use crate::kernel::KernelError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymplecticError {
    #[error(transparent)]
    Kernel(#[from] KernelError),
    #[error("invalid chart: {0}")]
    InvalidChart(String),
    #[error("expected a homogeneous element, got {0}")]
    NotHomogeneous(String),
    #[error("malformed section: {0}")]
    MalformedSection(String),
    #[error("invalid twist cochain: {0}")]
    InvalidCochain(String),
}
