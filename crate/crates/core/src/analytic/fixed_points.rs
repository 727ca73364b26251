use std::f64::consts::{LN_2, PI};

use serde::{Deserialize, Serialize};

use super::weights::{weight_real_asymptotic_log, weight_real_log, z_ratio_log, z_ratio_stirling_log};
use crate::specfun::erfc;
use crate::{Error, ModelSpec, Result};

/// Half-width of the window around `σ̂ = 1` in which asymptotic
/// predictions are flagged as unreliable.
pub const NEAR_CRITICAL_WIDTH: f64 = 0.05;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Regime {
    BelowThreshold,
    AboveThreshold,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AsymptoticPrediction {
    pub log_value: f64,
    pub regime: Regime,
    pub near_critical: bool,
    pub spec: ModelSpec,
}

/// Exact mean fixed-point count for one layer in one dimension,
/// `E|x − 1|` with `x ~ N(0, σ²)`.
pub fn mean_fixed_points_exact_1_1(sigma: f64) -> Result<f64> {
    if !(sigma > 0.0) || !sigma.is_finite() {
        return Err(Error::InvalidParameter(format!("sigma must be positive, got {sigma}")));
    }
    Ok(1.0 + sigma * (2.0 / PI).sqrt() * (-0.5 / (sigma * sigma)).exp()
        - erfc(1.0 / (sigma * std::f64::consts::SQRT_2)))
}

fn exponent(spec: &ModelSpec) -> f64 {
    let s = spec.sigma_hat();
    (spec.base_dim() * spec.depth()) as f64 * (s.ln() + 0.5 * (1.0 / (s * s) - 1.0))
}

/// Large-N log mean fixed-point count:
/// `½ log 2 + Σν log σ̂ + ND(log σ̂ + ½(1/σ̂² − 1))` above threshold, `0`
/// below.
pub fn mean_fixed_points_asymptotic_log(spec: &ModelSpec) -> AsymptoticPrediction {
    let s = spec.sigma_hat();
    let near_critical = (s - 1.0).abs() < NEAR_CRITICAL_WIDTH;
    let (log_value, regime) = if s > 1.0 {
        let v = 0.5 * LN_2 + spec.sum_nu() as f64 * s.ln() + exponent(spec);
        (v, Regime::AboveThreshold)
    } else {
        (0.0, Regime::BelowThreshold)
    };
    AsymptoticPrediction { log_value, regime, near_critical, spec: spec.clone() }
}

/// Log of the conjectured low-density form of `N^{(D−1)/2} ρ_{N+1}` at
/// `λ = (√N/σ̂)^D` for unit-variance layers:
/// `−½ log(4πD) + (D − 1 − Σν) log σ̂ − ND(log σ̂ + ½(1/σ̂² − 1))`.
pub fn low_density_approx_log(spec: &ModelSpec) -> Result<f64> {
    let s = spec.sigma_hat();
    if s >= 1.0 {
        return Err(Error::Domain(format!("low-density form needs sigma_hat < 1, got {s}")));
    }
    let d = spec.depth() as f64;
    Ok(-0.5 * (4.0 * PI * d).ln() + (d - 1.0 - spec.sum_nu() as f64) * s.ln() - exponent(spec))
}

/// Log of the factor multiplying `N^{(D−1)/2} ρ_{N+1}((√N/σ̂)^D)` in the
/// mean fixed-point count, assembled from the large-N forms of the
/// normalization ratio and the weight. Equals
/// `½ log(4πD) + (1 − D + Σν) log σ̂ + ND(log σ̂ + ½(1/σ̂² − 1))` up to
/// `O(1/N)`.
pub fn rescaled_prefactor_log(spec: &ModelSpec) -> Result<f64> {
    let (n, d) = (spec.base_dim(), spec.depth());
    let s = spec.sigma_hat();
    let nf = n as f64;
    let nd = nf * d as f64;
    let det_scale = nd * (s.ln() - 0.5 * nf.ln());
    let w = weight_real_asymptotic_log(s, n, d, spec.nus())?;
    let z = z_ratio_stirling_log(n, d, spec.nus())?;
    Ok(det_scale - w + z - 0.5 * (d as f64 - 1.0) * nf.ln())
}

/// Right-hand side of the determinant/real-density identity, in logs:
/// `ND log σ̄ − log w(1/σ̄^D) + log(Z_{N+1}/Z_N) + log ρ`, where `ρ` is the
/// real density of the unit-variance product with output size `N+1`
/// (same offsets) evaluated at `1/σ̄^D`.
pub fn lemma_rhs_log(spec: &ModelSpec, density_at_point: f64) -> Result<f64> {
    if !(density_at_point > 0.0) {
        return Err(Error::Domain(format!("density must be positive, got {density_at_point}")));
    }
    let (n, d) = (spec.base_dim(), spec.depth());
    if d > 2 {
        return Err(Error::Domain(format!("exact weight only for depth 1 or 2, got {d}")));
    }
    let log_sb = spec.log_sigma_bar();
    let point = (-(d as f64) * log_sb).exp();
    Ok((n * d) as f64 * log_sb - weight_real_log(point, d, spec.nus())?
        + z_ratio_log(n, d, spec.nus())?
        + density_at_point.ln())
}
