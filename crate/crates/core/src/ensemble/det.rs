use serde::{Deserialize, Serialize};

use super::{map_samples, McConfig};
use crate::linalg::{log_abs_det_shift, product_chain, StreamKey};
use crate::{Error, ModelSpec, Result};

const JACKKNIFE_BLOCKS: usize = 100;

/// Monte Carlo estimate of a positive expectation, kept in log space.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LogMcEstimate {
    /// `log` of the sample mean.
    pub log_mean: f64,
    /// Block-jackknife standard error of `log_mean`, i.e. the relative
    /// standard error of the mean.
    pub rel_stderr: f64,
    pub n_samples: usize,
    pub seed: u64,
    pub spec: ModelSpec,
}

/// Per-sample `log|det(J_1⋯J_D − I)|` by LU; exactly singular samples are
/// `−∞`.
pub fn abs_det_log_samples(spec: &ModelSpec, mc: &McConfig) -> Result<Vec<f64>> {
    mc.require(1)?;
    map_samples(mc, |i| {
        let x = product_chain(spec, &mut StreamKey::new(mc.seed, i).rng());
        match log_abs_det_shift(&x, 1.0) {
            Ok(v) => Ok(v),
            Err(Error::Singular) => Ok(f64::NEG_INFINITY),
            Err(e) => Err(e),
        }
    })?
    .into_iter()
    .collect()
}

/// The same per-sample quantity via the eigenvalues,
/// `Σ log|λ_k − 1| + Σ log|z_l − 1|²`, on the same streams.
pub fn abs_det_log_samples_eigen(spec: &ModelSpec, mc: &McConfig) -> Result<Vec<f64>> {
    mc.require(1)?;
    map_samples(mc, |i| {
        let key = StreamKey::new(mc.seed, i);
        let x = product_chain(spec, &mut key.rng());
        crate::linalg::eigen_split(&x).map(|s| s.log_abs_char_poly(1.0))
    })?
    .into_iter()
    .collect()
}

/// `E|det(J_1 ⋯ J_D − I_N)|`, i.e. the mean number of fixed points.
///
/// Above `σ̂ ≈ 1` the per-sample determinant is heavy-tailed and the
/// estimate is dominated by rare large samples; the sample count needed for
/// a given relative error grows with `N`.
pub fn estimate_abs_det_expectation(spec: &ModelSpec, mc: &McConfig) -> Result<LogMcEstimate> {
    mc.require(100)?;
    let logs = abs_det_log_samples(spec, mc)?;
    let (log_mean, rel_stderr) = log_mean_jackknife(&logs)?;
    Ok(LogMcEstimate {
        log_mean,
        rel_stderr,
        n_samples: mc.n_samples,
        seed: mc.seed,
        spec: spec.clone(),
    })
}

/// `log` of the mean of `exp(v_i)` and its 100-block jackknife standard
/// error. Needs at least 100 values, and at least one finite one.
pub fn log_mean_jackknife(logs: &[f64]) -> Result<(f64, f64)> {
    let n = logs.len();
    if n < JACKKNIFE_BLOCKS {
        return Err(Error::InvalidParameter(format!(
            "jackknife needs at least {JACKKNIFE_BLOCKS} samples, got {n}"
        )));
    }
    let max = logs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if max == f64::NEG_INFINITY {
        return Err(Error::Domain("every sample is singular".into()));
    }
    if !max.is_finite() {
        return Err(Error::Domain("non-finite sample".into()));
    }
    let bounds = |b: usize| (b * n / JACKKNIFE_BLOCKS, (b + 1) * n / JACKKNIFE_BLOCKS);
    let block_sums: Vec<f64> = (0..JACKKNIFE_BLOCKS)
        .map(|b| {
            let (lo, hi) = bounds(b);
            logs[lo..hi].iter().map(|v| (v - max).exp()).sum()
        })
        .collect();
    let total: f64 = block_sums.iter().sum();
    let log_mean = max + total.ln() - (n as f64).ln();

    let leave_out: Vec<f64> = (0..JACKKNIFE_BLOCKS)
        .map(|b| {
            let (lo, hi) = bounds(b);
            let rest: f64 = block_sums
                .iter()
                .enumerate()
                .filter(|&(c, _)| c != b)
                .map(|(_, s)| s)
                .sum();
            max + rest.ln() - ((n - (hi - lo)) as f64).ln()
        })
        .collect();
    let b = JACKKNIFE_BLOCKS as f64;
    let centre = leave_out.iter().sum::<f64>() / b;
    let var = (b - 1.0) / b * leave_out.iter().map(|v| (v - centre).powi(2)).sum::<f64>();
    Ok((log_mean, var.sqrt()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn jackknife_of_constant_is_exact() {
        let (m, se) = log_mean_jackknife(&[2.5; 250]).unwrap();
        assert!((m - 2.5).abs() < 1e-14);
        assert!(se < 1e-12);
    }

    #[test]
    fn singular_samples_vanish_in_the_mean() {
        let mut v = vec![0.0; 200];
        v[3] = f64::NEG_INFINITY;
        let (m, _) = log_mean_jackknife(&v).unwrap();
        assert!((m - (199f64 / 200.0).ln()).abs() < 1e-14);
        assert!(log_mean_jackknife(&[f64::NEG_INFINITY; 100]).is_err());
        assert!(log_mean_jackknife(&[0.0; 99]).is_err());
    }

    #[test]
    fn tiny_sigma_gives_one() {
        let spec = ModelSpec::single(1, 0.01).unwrap();
        let est = estimate_abs_det_expectation(&spec, &McConfig::new(1000, 1, 1)).unwrap();
        assert!((est.log_mean.exp() - 1.0).abs() < 1e-3);
    }
}
