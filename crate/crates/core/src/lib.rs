//! Mean number of fixed points of layered Gaussian random maps.
//!
//! The count is computed two ways. The [`fieldsim`] module samples smooth
//! one-dimensional Gaussian maps and counts solutions of `x = f(x)`
//! directly. The [`ensemble`] module estimates `E|det(J_1 ⋯ J_D − I)|`
//! over products of independent real Ginibre matrices, which equals the
//! mean fixed-point count. [`analytic`] holds closed forms and large-N
//! asymptotics used as oracles, [`specfun`] the special functions they
//! need, and [`linalg`] the dense kernels (LU log-determinant, real Schur
//! eigenvalue split, Ginibre sampling).
//!
//! [`cli`] wires everything into reproducible experiment drivers that emit
//! CSV/JSON with a run manifest.

pub mod analytic;
pub mod cli;
pub mod ensemble;
mod error;
pub mod fieldsim;
pub mod linalg;
pub mod quad;
pub mod specfun;

pub use error::{Error, Result};
pub use linalg::{DenseMatrix, EigenSplit, ModelSpec};
