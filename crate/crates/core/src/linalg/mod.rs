//! Dense real matrix kernels for the product-Ginibre ensemble.

mod lu;
mod matrix;
mod model;
mod sample;
mod schur;

pub use lu::log_abs_det_shift;
pub use matrix::DenseMatrix;
pub use model::ModelSpec;
pub use sample::{product_chain, product_chain_cyclic, sample_ginibre, StreamKey};
pub use schur::{eigen_split, EigenSplit};
