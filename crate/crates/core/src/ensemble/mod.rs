//! Monte Carlo estimators over the product-Ginibre ensemble.
//!
//! Sample `i` always draws from stream `i` of the run seed, and per-sample
//! results are reduced in index order, so every estimate is a pure function
//! of `(spec, n_samples, seed)` whatever the worker count.

mod counts;
mod det;
mod histogram;

pub use counts::{
    default_bandwidth, estimate_mean_real_count, estimate_p_nn, estimate_real_density_at,
    DensityEstimate, MeanEstimate,
};
pub use det::{
    abs_det_log_samples, abs_det_log_samples_eigen, estimate_abs_det_expectation,
    log_mean_jackknife, LogMcEstimate,
};
pub use histogram::{ks_radial_test, spectral_histogram, Histogram, KsResult, Normalization, Part};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::linalg::{eigen_split, product_chain, StreamKey};
use crate::{EigenSplit, Error, ModelSpec, Result};

/// Sample count, base seed and worker threads of one Monte Carlo run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct McConfig {
    pub n_samples: usize,
    pub seed: u64,
    pub workers: usize,
}

impl McConfig {
    pub fn new(n_samples: usize, seed: u64, workers: usize) -> Self {
        Self { n_samples, seed, workers }
    }

    fn require(&self, min_samples: usize) -> Result<()> {
        if self.n_samples < min_samples {
            return Err(Error::InvalidParameter(format!(
                "need at least {min_samples} samples, got {}",
                self.n_samples
            )));
        }
        if self.workers == 0 {
            return Err(Error::InvalidParameter("workers must be >= 1".into()));
        }
        Ok(())
    }
}

/// Evaluates `f(i)` for every sample index, each worker taking one
/// contiguous index range; output is in index order.
pub(crate) fn map_samples<T, F>(mc: &McConfig, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(u64) -> T + Sync,
{
    let n = mc.n_samples;
    let workers = mc.workers.clamp(1, n.max(1));
    let chunk = n.div_ceil(workers);
    let pool = rayon::ThreadPoolBuilder::new().num_threads(workers).build()?;
    let parts: Vec<Vec<T>> = pool.install(|| {
        (0..workers)
            .into_par_iter()
            .map(|w| {
                let lo = (w * chunk).min(n);
                let hi = ((w + 1) * chunk).min(n);
                (lo..hi).map(|i| f(i as u64)).collect()
            })
            .collect()
    });
    Ok(parts.into_iter().flatten().collect())
}

/// Eigenvalue split of sample `index`. A non-converging sample is redrawn
/// once from the perturbed stream; `None` if that fails too.
pub(crate) fn split_sample(spec: &ModelSpec, key: StreamKey) -> Result<Option<EigenSplit>> {
    for k in [key, key.perturbed()] {
        let x = product_chain(spec, &mut k.rng());
        match eigen_split(&x) {
            Ok(s) => return Ok(Some(s)),
            Err(Error::NonConvergence { .. }) => continue,
            Err(e) => return Err(e),
        }
    }
    Ok(None)
}

/// Runs [`split_sample`] over the whole run and applies the failure rule:
/// at most 0.1% of samples may fail after their retry.
pub(crate) fn map_splits<T, F>(spec: &ModelSpec, mc: &McConfig, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(u64, &EigenSplit) -> T + Sync,
{
    let raw = map_samples(mc, |i| {
        split_sample(spec, StreamKey::new(mc.seed, i)).map(|s| s.map(|s| f(i, &s)))
    })?;
    let mut out = Vec::with_capacity(raw.len());
    let mut failed = 0usize;
    for r in raw {
        match r? {
            Some(v) => out.push(v),
            None => failed += 1,
        }
    }
    if failed * 1000 > mc.n_samples {
        return Err(Error::TooManyFailures { failed, total: mc.n_samples });
    }
    Ok(out)
}

pub(crate) fn mean_and_stderr(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    if values.len() < 2 {
        return (mean, 0.0);
    }
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn map_is_worker_independent() {
        let a = map_samples(&McConfig::new(103, 5, 1), |i| i * i).unwrap();
        let b = map_samples(&McConfig::new(103, 5, 4), |i| i * i).unwrap();
        let c = map_samples(&McConfig::new(103, 5, 200), |i| i * i).unwrap();
        assert_eq!(a, b);
        assert_eq!(a, c);
        assert_eq!(a.len(), 103);
        assert_eq!(a[102], 102 * 102);
    }
}
