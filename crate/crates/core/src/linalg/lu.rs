use super::DenseMatrix;
use crate::{Error, Result};

/// `log |det(X − shift·I)|` by LU factorization with partial pivoting.
///
/// Returns [`Error::Singular`] if a pivot is exactly zero; Monte Carlo
/// callers record that as a `−∞` contribution.
pub fn log_abs_det_shift(x: &DenseMatrix, shift: f64) -> Result<f64> {
    if !x.is_square() {
        return Err(Error::InvalidParameter(format!(
            "determinant needs a square matrix, got {}x{}",
            x.rows(),
            x.cols()
        )));
    }
    let n = x.rows();
    let mut a = x.shifted(shift).as_slice().to_vec();
    let mut log_det = 0.0;
    for k in 0..n {
        let (p, pivot) = (k..n)
            .map(|i| (i, a[i * n + k].abs()))
            .fold((k, -1.0), |best, c| if c.1 > best.1 { c } else { best });
        if pivot == 0.0 {
            return Err(Error::Singular);
        }
        if p != k {
            for j in 0..n {
                a.swap(k * n + j, p * n + j);
            }
        }
        let akk = a[k * n + k];
        log_det += pivot.ln();
        for i in k + 1..n {
            let factor = a[i * n + k] / akk;
            if factor == 0.0 {
                continue;
            }
            for j in k + 1..n {
                a[i * n + j] -= factor * a[k * n + j];
            }
        }
    }
    Ok(log_det)
}
