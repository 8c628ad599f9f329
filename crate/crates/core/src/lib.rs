//! Shifted cotangent bundles, Lie algebroid structures and higher Dirac
//! geometry, computed exactly over the rationals.

pub mod algebroid;
pub mod catalog;
pub mod dirac;
pub mod exterior;
pub mod kernel;
pub mod linalg;
pub mod random;
pub mod report;
pub mod ruth_lk;
pub mod symplectic;
