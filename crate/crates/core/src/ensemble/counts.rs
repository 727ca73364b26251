use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{map_splits, mean_and_stderr, McConfig};
use crate::{Error, ModelSpec, Result};

/// Sample mean with its standard error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeanEstimate {
    pub mean: f64,
    pub stderr: f64,
}

/// Box-kernel density estimate at a point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DensityEstimate {
    pub density: f64,
    pub stderr: f64,
    /// Richardson estimate of the `O(h²)` smoothing bias, from the same
    /// samples at bandwidth `2h`.
    pub bias: f64,
    pub bandwidth: f64,
}

/// Mean number of real eigenvalues of `J_1 ⋯ J_D`.
pub fn estimate_mean_real_count(spec: &ModelSpec, mc: &McConfig) -> Result<MeanEstimate> {
    mc.require(100)?;
    let counts = map_splits(spec, mc, |_, s| s.n_real() as f64)?;
    let (mean, stderr) = mean_and_stderr(&counts);
    Ok(MeanEstimate { mean, stderr })
}

/// Empirical law of the number `n` of real eigenvalues, with an entry for
/// every `n` in `0..=N`. Off-parity entries are exactly zero.
pub fn estimate_p_nn(spec: &ModelSpec, mc: &McConfig) -> Result<BTreeMap<usize, f64>> {
    mc.require(1000)?;
    let counts = map_splits(spec, mc, |_, s| s.n_real())?;
    let mut hist = vec![0usize; spec.base_dim() + 1];
    for n in &counts {
        hist[*n] += 1;
    }
    let total = counts.len() as f64;
    Ok(hist.into_iter().enumerate().map(|(n, c)| (n, c as f64 / total)).collect())
}

/// `0.05 · N^{D/2} · σ̄^{−D} · max(σ̂, 1)`.
pub fn default_bandwidth(spec: &ModelSpec) -> f64 {
    let d = spec.depth() as f64;
    let n = spec.base_dim() as f64;
    0.05 * (0.5 * d * n.ln() - d * spec.log_sigma_bar()).exp() * spec.sigma_hat().max(1.0)
}

/// Mean number of real eigenvalues in `[λ − h, λ + h]` divided by `2h`.
pub fn estimate_real_density_at(
    spec: &ModelSpec,
    lambda: f64,
    bandwidth: f64,
    mc: &McConfig,
) -> Result<DensityEstimate> {
    if !(bandwidth > 0.0) || !bandwidth.is_finite() {
        return Err(Error::InvalidParameter(format!("bandwidth must be positive, got {bandwidth}")));
    }
    if !lambda.is_finite() {
        return Err(Error::InvalidParameter("evaluation point must be finite".into()));
    }
    mc.require(2)?;
    let h = bandwidth;
    let pairs = map_splits(spec, mc, |_, s| {
        let inside = |w: f64| s.real_eigs.iter().filter(|l| (*l - lambda).abs() <= w).count();
        (inside(h) as f64, inside(2.0 * h) as f64)
    })?;
    let (narrow, wide): (Vec<f64>, Vec<f64>) = pairs.into_iter().unzip();
    let (m1, se1) = mean_and_stderr(&narrow);
    let (m2, _) = mean_and_stderr(&wide);
    let density = m1 / (2.0 * h);
    let wide_density = m2 / (4.0 * h);
    Ok(DensityEstimate {
        density,
        stderr: se1 / (2.0 * h),
        bias: (wide_density - density) / 3.0,
        bandwidth: h,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scalar_is_always_real() {
        let spec = ModelSpec::new(1, vec![2, 0], vec![1.0, 2.0, 0.3]).unwrap();
        let est = estimate_mean_real_count(&spec, &McConfig::new(200, 3, 2)).unwrap();
        assert_eq!(est.mean, 1.0);
        assert_eq!(est.stderr, 0.0);
    }

    #[test]
    fn parity_zeros() {
        let spec = ModelSpec::single(3, 1.0).unwrap();
        let p = estimate_p_nn(&spec, &McConfig::new(1000, 11, 1)).unwrap();
        assert_eq!(p[&0], 0.0);
        assert_eq!(p[&2], 0.0);
        assert!((p.values().sum::<f64>() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn far_outside_spectrum() {
        let spec = ModelSpec::single(3, 1.0).unwrap();
        let est =
            estimate_real_density_at(&spec, 10.0 * 3f64.sqrt() * 10.0, 0.05, &McConfig::new(500, 1, 1))
                .unwrap();
        assert_eq!(est.density, 0.0);
        assert!(estimate_real_density_at(&spec, 0.0, 0.0, &McConfig::new(500, 1, 1)).is_err());
    }

    #[test]
    fn bandwidth_default() {
        let spec = ModelSpec::single(1, 1.0).unwrap();
        assert!((default_bandwidth(&spec) - 0.05).abs() < 1e-15);
    }
}
