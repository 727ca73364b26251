use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{map_splits, McConfig};
use crate::linalg::StreamKey;
use crate::{Error, ModelSpec, Result};

// Stream ids at and above this offset pick eigenvalues; below it they
// generate matrices.
const PICK_STREAM_OFFSET: u64 = 1 << 63;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Part {
    /// Real eigenvalues.
    Real,
    /// Moduli of complex eigenvalues, both members of each conjugate pair.
    ComplexModulus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Normalization {
    ProbabilityDensity,
    PerMatrixIntensity,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Histogram {
    pub edges: Vec<f64>,
    /// Bin heights under `normalization`.
    pub counts: Vec<f64>,
    pub normalization: Normalization,
    pub n_matrices: usize,
    pub raw_counts: Vec<u64>,
    pub part: Part,
    pub scaled: bool,
    pub base_dim: usize,
}

impl Histogram {
    pub fn centers(&self) -> Vec<f64> {
        self.edges.windows(2).map(|w| 0.5 * (w[0] + w[1])).collect()
    }

    pub fn width(&self, bin: usize) -> f64 {
        self.edges[bin + 1] - self.edges[bin]
    }

    /// Integral of the heights, i.e. the mean count in range per matrix for
    /// a per-matrix intensity.
    pub fn integral(&self) -> f64 {
        self.counts.iter().enumerate().map(|(b, c)| c * self.width(b)).sum()
    }

    /// Same bins renormalized to unit mass.
    pub fn to_probability_density(&self) -> Histogram {
        let total: u64 = self.raw_counts.iter().sum();
        let counts = self
            .raw_counts
            .iter()
            .enumerate()
            .map(|(b, &c)| if total == 0 { 0.0 } else { c as f64 / (total as f64 * self.width(b)) })
            .collect();
        Histogram { counts, normalization: Normalization::ProbabilityDensity, ..self.clone() }
    }

    /// For a scaled per-matrix intensity, the heights divided by `√N` (real
    /// part) or `N` (complex modulus), which puts them on the same footing
    /// as the global limiting densities.
    pub fn global_scaled(&self) -> Vec<f64> {
        let n = self.base_dim as f64;
        let f = match self.part {
            Part::Real => n.sqrt(),
            Part::ComplexModulus => n,
        };
        self.counts.iter().map(|c| c / f).collect()
    }

    /// Standard error of each per-matrix height, treating bin counts as
    /// Poisson.
    pub fn poisson_stderr(&self) -> Vec<f64> {
        let m = self.n_matrices as f64;
        self.raw_counts
            .iter()
            .enumerate()
            .map(|(b, &c)| (c as f64).sqrt() / (m * self.width(b)))
            .collect()
    }
}

/// `σ̄^D N^{D/2}`, the spread of the spectrum of `J_1 ⋯ J_D`.
pub(crate) fn spectral_scale(spec: &ModelSpec) -> f64 {
    let d = spec.depth() as f64;
    (d * spec.log_sigma_bar() + 0.5 * d * (spec.base_dim() as f64).ln()).exp()
}

/// Per-matrix intensity histogram of real eigenvalues or complex moduli.
/// With `scaled`, eigenvalues are divided by `σ̄^D N^{D/2}` first.
pub fn spectral_histogram(
    spec: &ModelSpec,
    part: Part,
    scaled: bool,
    bins: usize,
    range: (f64, f64),
    mc: &McConfig,
) -> Result<Histogram> {
    mc.require(1)?;
    let (lo, hi) = range;
    if bins == 0 || !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
        return Err(Error::InvalidParameter(format!("bad histogram layout {bins} bins on [{lo}, {hi}]")));
    }
    if scaled {
        let (need_lo, need_hi) = match part {
            Part::Real => (-1.5, 1.5),
            Part::ComplexModulus => (0.0, 1.5),
        };
        if lo > need_lo || hi < need_hi {
            return Err(Error::InvalidParameter(format!(
                "scaled range must cover [{need_lo}, {need_hi}]"
            )));
        }
    }
    let scale = if scaled { spectral_scale(spec) } else { 1.0 };
    let width = (hi - lo) / bins as f64;
    let bin_of = |v: f64| -> Option<usize> {
        if v < lo || v > hi {
            return None;
        }
        Some((((v - lo) / width) as usize).min(bins - 1))
    };
    let per_matrix = map_splits(spec, mc, |_, s| {
        let mut hits = Vec::new();
        match part {
            Part::Real => hits.extend(s.real_eigs.iter().filter_map(|l| bin_of(l / scale))),
            Part::ComplexModulus => {
                for &(re, im) in &s.complex_pairs {
                    if let Some(b) = bin_of(re.hypot(im) / scale) {
                        hits.push(b);
                        hits.push(b);
                    }
                }
            }
        }
        hits
    })?;
    let n_matrices = per_matrix.len();
    let mut raw_counts = vec![0u64; bins];
    for hits in per_matrix {
        for b in hits {
            raw_counts[b] += 1;
        }
    }
    let edges: Vec<f64> = (0..=bins).map(|k| lo + width * k as f64).collect();
    let counts = raw_counts.iter().map(|&c| c as f64 / (n_matrices as f64 * width)).collect();
    Ok(Histogram {
        edges,
        counts,
        normalization: Normalization::PerMatrixIntensity,
        n_matrices,
        raw_counts,
        part,
        scaled,
        base_dim: spec.base_dim(),
    })
}

/// Kolmogorov–Smirnov comparison of scaled complex moduli with the radial
/// law `F(r) = min(r, 1)^{2/D}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KsResult {
    /// Statistic over one uniformly chosen complex eigenvalue per matrix
    /// (an i.i.d. sample).
    pub statistic: f64,
    pub p_value: f64,
    pub n: usize,
    /// Statistic over all complex eigenvalues pooled. Eigenvalues of one
    /// matrix are dependent, so this carries no p-value.
    pub pooled_statistic: f64,
    pub pooled_n: usize,
}

pub fn ks_radial_test(spec: &ModelSpec, mc: &McConfig) -> Result<KsResult> {
    mc.require(1)?;
    let scale = spectral_scale(spec);
    let per_matrix = map_splits(spec, mc, |i, s| {
        let radii: Vec<f64> = s.complex_pairs.iter().map(|&(re, im)| re.hypot(im) / scale).collect();
        let pick = if radii.is_empty() {
            None
        } else {
            let mut rng = StreamKey::new(mc.seed, PICK_STREAM_OFFSET + i).rng();
            Some(radii[rng.random_range(0..radii.len())])
        };
        (pick, radii)
    })?;
    let d = spec.depth() as f64;
    let cdf = |r: f64| r.clamp(0.0, 1.0).powf(2.0 / d);
    let mut picked: Vec<f64> = per_matrix.iter().filter_map(|(p, _)| *p).collect();
    let mut pooled: Vec<f64> = per_matrix.into_iter().flat_map(|(_, r)| r).collect();
    if picked.is_empty() {
        return Err(Error::Domain("no complex eigenvalues sampled".into()));
    }
    let statistic = ks_statistic(&mut picked, cdf);
    let pooled_statistic = ks_statistic(&mut pooled, cdf);
    let n = picked.len();
    let sn = (n as f64).sqrt();
    Ok(KsResult {
        statistic,
        p_value: kolmogorov_q((sn + 0.12 + 0.11 / sn) * statistic),
        n,
        pooled_statistic,
        pooled_n: pooled.len(),
    })
}

/// `sup |F_n − F|` for a sample (sorted in place).
pub(crate) fn ks_statistic<F: Fn(f64) -> f64>(sample: &mut [f64], cdf: F) -> f64 {
    sample.sort_by(|a, b| a.total_cmp(b));
    let n = sample.len() as f64;
    sample
        .iter()
        .enumerate()
        .map(|(j, &x)| {
            let f = cdf(x);
            (f - j as f64 / n).abs().max(((j + 1) as f64 / n - f).abs())
        })
        .fold(0.0, f64::max)
}

/// Kolmogorov survival function `P(K > z)`.
pub(crate) fn kolmogorov_q(z: f64) -> f64 {
    use std::f64::consts::PI;
    if z <= 0.0 {
        return 1.0;
    }
    if z < 1.18 {
        let y = (-PI * PI / (8.0 * z * z)).exp();
        let p = (2.0 * PI).sqrt() / z * (y + y.powi(9) + y.powi(25) + y.powi(49));
        (1.0 - p).clamp(0.0, 1.0)
    } else {
        let x = (-2.0 * z * z).exp();
        (2.0 * (x - x.powi(4) + x.powi(9))).clamp(0.0, 1.0)
    }
}
