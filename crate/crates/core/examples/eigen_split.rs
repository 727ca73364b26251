//! Real Schur split of a product matrix and the determinant two ways.

use fprmt::linalg::{eigen_split, log_abs_det_shift, product_chain, StreamKey};
use fprmt::ModelSpec;

fn main() -> fprmt::Result<()> {
    let spec = ModelSpec::new(7, vec![1, 0], vec![1.0, 0.5, 2.0])?;
    let x = product_chain(&spec, &mut StreamKey::new(42, 0).rng());
    let split = eigen_split(&x)?;
    println!("{} real eigenvalues: {:?}", split.n_real(), split.real_eigs);
    for (re, im) in &split.complex_pairs {
        println!("pair {re:.5} ± {im:.5}i");
    }
    println!("log|det(X − I)| by LU:          {:.12}", log_abs_det_shift(&x, 1.0)?);
    println!("log|det(X − I)| by eigenvalues: {:.12}", split.log_abs_char_poly(1.0));
    Ok(())
}
