use std::f64::consts::{LN_2, PI};

use super::{check_depth, check_sigma_hat};
use crate::specfun::{lgamma, log_bessel_k};
use crate::{Error, Result};

fn check_nus(depth: usize, nus: &[usize]) -> Result<()> {
    check_depth(depth)?;
    if nus.len() != depth - 1 {
        return Err(Error::InvalidParameter(format!(
            "depth {depth} needs {} offsets, got {}",
            depth - 1,
            nus.len()
        )));
    }
    Ok(())
}

/// `log(Z_{N+1}/Z_N) = (D(N+1)/2) log 2 + log Γ((N+1)/2) + Σ_d log Γ((N+1+ν_d)/2)`.
pub fn z_ratio_log(n: usize, depth: usize, nus: &[usize]) -> Result<f64> {
    check_nus(depth, nus)?;
    if n == 0 {
        return Err(Error::InvalidParameter("N must be >= 1".into()));
    }
    let np1 = (n + 1) as f64;
    let layers: f64 = nus.iter().map(|&nu| lgamma(0.5 * (np1 + nu as f64))).sum();
    Ok(0.5 * depth as f64 * np1 * LN_2 + lgamma(0.5 * np1) + layers)
}

/// Large-N form of [`z_ratio_log`]:
/// `(D/2) log 4π + (DN/2) log N + (Σν/2) log(N/2) − ND/2`, error `O(1/N)`.
pub fn z_ratio_stirling_log(n: usize, depth: usize, nus: &[usize]) -> Result<f64> {
    check_nus(depth, nus)?;
    if n == 0 {
        return Err(Error::InvalidParameter("N must be >= 1".into()));
    }
    let (nf, d) = (n as f64, depth as f64);
    let sum_nu: usize = nus.iter().sum();
    Ok(0.5 * d * (4.0 * PI).ln() + 0.5 * d * nf * nf.ln() + 0.5 * sum_nu as f64 * (0.5 * nf).ln()
        - 0.5 * nf * d)
}

/// Log of the real-eigenvalue weight: `−λ²/2` for one layer,
/// `log 2 + (ν/2) log(|λ|/2) + log K_{ν/2}(|λ|)` for two.
pub fn weight_real_log(lambda: f64, depth: usize, nus: &[usize]) -> Result<f64> {
    check_nus(depth, nus)?;
    match depth {
        1 => Ok(-0.5 * lambda * lambda),
        2 => {
            if lambda == 0.0 {
                return Err(Error::Domain("two-layer weight is singular at 0".into()));
            }
            let nu = nus[0] as f64;
            let x = lambda.abs();
            Ok(LN_2 + 0.5 * nu * (0.5 * x).ln() + log_bessel_k(0.5 * nu, x)?)
        }
        _ => Err(Error::Domain(format!(
            "exact weight only for depth 1 or 2, got {depth}; use the asymptotic form"
        ))),
    }
}

/// Leading large-N term of the log weight at `λ = (√N/σ̂)^D`:
/// `−½ log D + ((D−1)/2) log(4πσ̂²/N) + (Σν/2) log(N/2σ̂²) − ND/(2σ̂²)`.
pub fn weight_real_asymptotic_log(
    sigma_hat: f64,
    n: usize,
    depth: usize,
    nus: &[usize],
) -> Result<f64> {
    check_sigma_hat(sigma_hat)?;
    check_nus(depth, nus)?;
    if n == 0 {
        return Err(Error::InvalidParameter("N must be >= 1".into()));
    }
    let (nf, d) = (n as f64, depth as f64);
    let s2 = sigma_hat * sigma_hat;
    let sum_nu: usize = nus.iter().sum();
    Ok(-0.5 * d.ln() + 0.5 * (d - 1.0) * (4.0 * PI * s2 / nf).ln()
        + 0.5 * sum_nu as f64 * (nf / (2.0 * s2)).ln()
        - nf * d / (2.0 * s2))
}
