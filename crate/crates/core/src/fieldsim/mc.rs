use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::count::{composed_residual, count_sign_changes};
use super::sampler::{FieldSampler, KernelSpec};
use crate::ensemble::{map_samples, mean_and_stderr, McConfig, MeanEstimate};
use crate::linalg::StreamKey;
use crate::{Error, Result};

const RUNS_PER_TASK: usize = 64;

/// Mean fixed-point count over independent field replicas.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FieldMcResult {
    pub mean: f64,
    pub stderr: f64,
    pub n_fields: usize,
    /// Number of replicas with each count.
    pub distribution: BTreeMap<usize, usize>,
}

impl FieldMcResult {
    fn from_counts(counts: &[usize]) -> Self {
        let as_f: Vec<f64> = counts.iter().map(|&c| c as f64).collect();
        let (mean, stderr) = mean_and_stderr(&as_f);
        let mut distribution = BTreeMap::new();
        for &c in counts {
            *distribution.entry(c).or_insert(0) += 1;
        }
        Self { mean, stderr, n_fields: counts.len(), distribution }
    }

    /// Fraction of replicas with exactly `count` fixed points.
    pub fn fraction(&self, count: usize) -> f64 {
        self.distribution.get(&count).copied().unwrap_or(0) as f64 / self.n_fields as f64
    }
}

/// Counts from the same paths on the sampling grid and on its every-other
/// point subgrid (spacing doubled).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HalvingResult {
    pub fine: FieldMcResult,
    pub coarse: FieldMcResult,
    /// Paired mean of `fine − coarse`.
    pub difference: MeanEstimate,
}

// Runs `f` on consecutive blocks of run indices, in parallel over blocks.
fn map_runs<T, F>(mc: &McConfig, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(std::ops::Range<u64>) -> Result<Vec<T>> + Sync,
{
    if mc.n_samples < 2 {
        return Err(Error::InvalidParameter("need at least 2 field replicas".into()));
    }
    let n = mc.n_samples as u64;
    let tasks = mc.n_samples.div_ceil(RUNS_PER_TASK);
    let blocks = map_samples(&McConfig::new(tasks, mc.seed, mc.workers), |t| {
        let lo = t * RUNS_PER_TASK as u64;
        f(lo..(lo + RUNS_PER_TASK as u64).min(n))
    })?;
    let mut out = Vec::with_capacity(mc.n_samples);
    for b in blocks {
        out.extend(b?);
    }
    Ok(out)
}

fn residual(points: &[f64], values: &[f64]) -> Vec<f64> {
    values.iter().zip(points).map(|(v, x)| v - x).collect()
}

/// Mean number of solutions of `f(x) = x` on `[−L, L]`; replica `i` uses
/// stream `i`.
pub fn estimate_field_mean_count(
    kernel: KernelSpec,
    half_width: f64,
    dx: f64,
    mc: &McConfig,
) -> Result<FieldMcResult> {
    let sampler = FieldSampler::new(kernel, half_width, dx)?;
    let counts = map_runs(mc, |runs| {
        let keys: Vec<StreamKey> = runs.map(|i| StreamKey::new(mc.seed, i)).collect();
        Ok(sampler
            .sample_batch(&keys)
            .iter()
            .map(|v| count_sign_changes(&residual(sampler.points(), v)))
            .collect())
    })?;
    Ok(FieldMcResult::from_counts(&counts))
}

/// Samples at spacing `dx/2` and counts on both that grid and the `dx`
/// subgrid, so the two estimates see the same paths.
pub fn estimate_halving_bias(
    kernel: KernelSpec,
    half_width: f64,
    dx: f64,
    mc: &McConfig,
) -> Result<HalvingResult> {
    let sampler = FieldSampler::new(kernel, half_width, 0.5 * dx)?;
    let pts = sampler.points();
    let coarse_pts: Vec<f64> = pts.iter().step_by(2).copied().collect();
    let pairs = map_runs(mc, |runs| {
        let keys: Vec<StreamKey> = runs.map(|i| StreamKey::new(mc.seed, i)).collect();
        Ok(sampler
            .sample_batch(&keys)
            .iter()
            .map(|v| {
                let coarse: Vec<f64> = v.iter().step_by(2).copied().collect();
                (
                    count_sign_changes(&residual(pts, v)),
                    count_sign_changes(&residual(&coarse_pts, &coarse)),
                )
            })
            .collect())
    })?;
    let (fine, coarse): (Vec<usize>, Vec<usize>) = pairs.iter().copied().unzip();
    let diffs: Vec<f64> = pairs.iter().map(|&(f, c)| f as f64 - c as f64).collect();
    let (mean, stderr) = mean_and_stderr(&diffs);
    Ok(HalvingResult {
        fine: FieldMcResult::from_counts(&fine),
        coarse: FieldMcResult::from_counts(&coarse),
        difference: MeanEstimate { mean, stderr },
    })
}

/// Mean number of solutions of `f₁(f₂(x)) = x`. Replica `i` draws `f₁`
/// from stream `2i` and `f₂` from stream `2i + 1`.
pub fn estimate_composed_mean_count(
    sigma1: f64,
    sigma2: f64,
    half_width: f64,
    dx: f64,
    mc: &McConfig,
) -> Result<FieldMcResult> {
    let outer = FieldSampler::new(KernelSpec::squared_exponential(sigma1)?, half_width, dx)?;
    let inner = FieldSampler::new(KernelSpec::squared_exponential(sigma2)?, half_width, dx)?;
    let counts = map_runs(mc, |runs| {
        let runs: Vec<u64> = runs.collect();
        let k1: Vec<StreamKey> = runs.iter().map(|i| StreamKey::new(mc.seed, 2 * i)).collect();
        let k2: Vec<StreamKey> = runs.iter().map(|i| StreamKey::new(mc.seed, 2 * i + 1)).collect();
        let f1 = outer.sample_batch(&k1);
        let f2 = inner.sample_batch(&k2);
        f1.into_iter()
            .zip(&f2)
            .map(|(a, b)| {
                composed_residual(outer.points(), a, inner.points(), b).map(|g| count_sign_changes(&g))
            })
            .collect()
    })?;
    Ok(FieldMcResult::from_counts(&counts))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fieldsim::compose_and_count;

    #[test]
    fn composed_run_zero_matches_single_call() {
        let est = estimate_composed_mean_count(1.0, 1.0, 8.0, 0.05, &McConfig::new(2, 9, 1)).unwrap();
        let single = compose_and_count(1.0, 1.0, 8.0, 0.05, 9).unwrap();
        assert!(est.distribution.contains_key(&single));
    }

    #[test]
    fn worker_count_does_not_matter() {
        let k = KernelSpec::squared_exponential(1.0).unwrap();
        let a = estimate_field_mean_count(k, 8.0, 0.05, &McConfig::new(150, 2, 1)).unwrap();
        let b = estimate_field_mean_count(k, 8.0, 0.05, &McConfig::new(150, 2, 3)).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.n_fields, 150);
    }
}
