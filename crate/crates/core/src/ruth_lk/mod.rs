//! Two-term representations up to homotopy, the semidirect `L_k`-algebroids
//! they produce, and the degree-1 vector fields those encode.

mod connection;
mod lk;
mod q;
mod rep;

pub use connection::ConnectionData;
pub use lk::{
    check_lk_jacobi, semidirect, twisted_coadjoint_semidirect, LkAlgebroidData, LK_CLAUSES,
};
pub use q::{lk_q_structure, q_from_lk, q_squared};
pub use rep::{adjoint_rep, check_ruth, coadjoint_rep, RepUTHData, RUTH_CLAUSES};

use thiserror::Error;

use crate::algebroid::AlgebroidError;
use crate::kernel::{BasePoly, KernelError};
use crate::symplectic::SymplecticError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RuthError {
    #[error(transparent)]
    Kernel(#[from] KernelError),
    #[error(transparent)]
    Symplectic(#[from] SymplecticError),
    #[error(transparent)]
    Algebroid(#[from] AlgebroidError),
    #[error("shape error: {0}")]
    Shape(String),
    #[error("not antisymmetric: {0}")]
    NotAntisymmetric(String),
    #[error("the algebroid is not Lie: {0}")]
    NotLie(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub(crate) type Table3 = Vec<Vec<Vec<BasePoly>>>;

pub(crate) fn check_table(
    name: &str,
    t: &[Vec<Vec<BasePoly>>],
    dims: [usize; 3],
    m: usize,
) -> Result<(), RuthError> {
    let ok = t.len() == dims[0]
        && t.iter()
            .all(|r| r.len() == dims[1] && r.iter().all(|c| c.len() == dims[2]));
    if !ok {
        return Err(RuthError::Shape(format!(
            "{name} must be {}x{}x{}",
            dims[0], dims[1], dims[2]
        )));
    }
    check_vars(name, t.iter().flatten().flatten(), m)
}

pub(crate) fn check_matrix(
    name: &str,
    t: &[Vec<BasePoly>],
    dims: [usize; 2],
    m: usize,
) -> Result<(), RuthError> {
    if t.len() != dims[0] || t.iter().any(|r| r.len() != dims[1]) {
        return Err(RuthError::Shape(format!(
            "{name} must be {}x{}",
            dims[0], dims[1]
        )));
    }
    check_vars(name, t.iter().flatten(), m)
}

pub(crate) fn check_vars<'a>(
    name: &str,
    polys: impl IntoIterator<Item = &'a BasePoly>,
    m: usize,
) -> Result<(), RuthError> {
    match polys.into_iter().find(|p| p.num_vars() > m) {
        Some(p) => Err(RuthError::Shape(format!(
            "{name}: coefficient {p} uses more than {m} base coordinates"
        ))),
        None => Ok(()),
    }
}

pub(crate) fn zeros(len: usize) -> Vec<BasePoly> {
    vec![BasePoly::zero(); len]
}

pub(crate) fn axpy(acc: &mut [BasePoly], c: &BasePoly, v: &[BasePoly]) {
    if c.is_zero() {
        return;
    }
    for (x, y) in acc.iter_mut().zip(v) {
        if !y.is_zero() {
            *x = &*x + &(c * y);
        }
    }
}

pub(crate) fn sub(u: &[BasePoly], v: &[BasePoly]) -> Vec<BasePoly> {
    u.iter().zip(v).map(|(a, b)| a - b).collect()
}

pub(crate) fn is_zero(v: &[BasePoly]) -> bool {
    v.iter().all(BasePoly::is_zero)
}

pub(crate) fn show(v: &[BasePoly]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(", "))
}
