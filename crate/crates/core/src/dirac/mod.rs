//! Lagrangian, coisotropic, higher Dirac and Nambu conditions for
//! subbundles of `A + wedge^{k-1} A*`.
//!
//! Two regimes are supported. Over a point every datum is a constant and all
//! checks are exact linear algebra, including bracket closure. Over a
//! polynomial base the algebraic clauses are checked at sample points, and
//! only graphs of multivectors (whose sections form a free module) get a
//! symbolic bracket-closure test.

mod fibre;
mod ideal;
mod lagrangian;
mod nambu;
mod pair;
mod spec;

use thiserror::Error;

use crate::algebroid::AlgebroidError;
use crate::kernel::KernelError;
use crate::symplectic::SymplecticError;

pub use ideal::{check_higher_dirac, fibre_monomials, ideal_part, preserves_ideal};
pub use lagrangian::{
    check_coisotropic, check_lagrangian, check_nambu_dirac_hagiwara, check_quadruple,
    total_dimension,
};
pub use nambu::{check_twisted_nambu, graph_closure, is_decomposable, NambuTensor};
pub use pair::{check_wade, from_pair, restrict, to_pair, to_pair_at, PairSpec};
pub use spec::{
    conormal, graph_of_form, graph_of_nambu, induced_k, KElement, Regime, SubbundleSpec,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiracError {
    #[error(transparent)]
    Kernel(#[from] KernelError),
    #[error(transparent)]
    Symplectic(#[from] SymplecticError),
    #[error(transparent)]
    Algebroid(#[from] AlgebroidError),
    #[error("malformed data: {0}")]
    Shape(String),
    #[error("not lagrangian: {0}")]
    NotLagrangian(String),
    #[error("tensor is not decomposable: {0}")]
    NotDecomposable(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}
