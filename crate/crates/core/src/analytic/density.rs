use std::f64::consts::PI;

use super::check_depth;
use super::weights::{weight_real_log, z_ratio_log};
use crate::quad::integrate_panels;
use crate::specfun::{erf, erfc, incomplete_gamma_logs, lgamma};
use crate::{Error, Result};

/// Largest `N` accepted by [`finite_n_real_density_integral`].
pub const MAX_INTEGRAL_N: usize = 30;

/// Limiting density of scaled real eigenvalues, `|λ|^{1/D−1}/√(2πD)` on
/// `|λ| < 1`. Infinite at `0` for `D ≥ 2`.
pub fn global_density_real(lambda: f64, depth: usize) -> Result<f64> {
    check_depth(depth)?;
    let d = depth as f64;
    let a = lambda.abs();
    if a >= 1.0 {
        return Ok(0.0);
    }
    if a == 0.0 && depth > 1 {
        return Ok(f64::INFINITY);
    }
    Ok(a.powf(1.0 / d - 1.0) / (2.0 * PI * d).sqrt())
}

/// Limiting density of scaled complex eigenvalues in the plane,
/// `|z|^{2/D−2}/(πD)` on the unit disc. Infinite at `0` for `D ≥ 2`.
pub fn global_density_complex(modulus: f64, depth: usize) -> Result<f64> {
    check_depth(depth)?;
    if modulus < 0.0 {
        return Err(Error::Domain(format!("modulus must be nonnegative, got {modulus}")));
    }
    let d = depth as f64;
    if modulus >= 1.0 {
        return Ok(0.0);
    }
    if modulus == 0.0 && depth > 1 {
        return Ok(f64::INFINITY);
    }
    Ok(modulus.powf(2.0 / d - 2.0) / (PI * d))
}

/// Real-eigenvalue density of an `(N+1)×(N+1)` real Ginibre matrix:
///
/// `Γ(N,λ²)/(√(2π)Γ(N)) + 2^{N/2−1} γ(N/2, λ²/2) |λ|^N e^{−λ²/2}/(√(2π)Γ(N))`.
pub fn finite_n_real_density_d1(n: usize, lambda: f64) -> Result<f64> {
    if n == 0 {
        return Err(Error::InvalidParameter("N must be >= 1".into()));
    }
    if !lambda.is_finite() {
        return Ok(0.0);
    }
    let nf = n as f64;
    let l2 = lambda * lambda;
    let half_log_2pi = 0.5 * (2.0 * PI).ln();
    let (_, log_q) = incomplete_gamma_logs(nf, l2);
    let first = log_q - half_log_2pi;
    if lambda == 0.0 {
        return Ok(first.exp());
    }
    let (log_p, _) = incomplete_gamma_logs(0.5 * nf, 0.5 * l2);
    let second = (0.5 * nf - 1.0) * std::f64::consts::LN_2 + log_p + lgamma(0.5 * nf)
        + nf * lambda.abs().ln()
        - 0.5 * l2
        - half_log_2pi
        - lgamma(nf);
    Ok(first.exp() + second.exp())
}

/// Real-eigenvalue density of the product of `D ∈ {1, 2}` Ginibre matrices
/// with output size `N+1`, from the weight-function integral
///
/// `c w(λ) ∫ |λ−x| w(x) Σ_{k=0}^{N−1} (xλ)^k / ∏_d Γ(k+ν_d+1) dx`,
/// `c = ∏_{d<D} 2^{ν_d−1}/√(2π)` with `ν_0 = 0`,
///
/// plus `w(λ) λ^N Z_N/Z_{N+1}` when `N + 1` is odd (the eigenvalue that is
/// forced to be real).
pub fn finite_n_real_density_integral(
    depth: usize,
    n: usize,
    lambda: f64,
    nus: &[usize],
) -> Result<f64> {
    if !(1..=2).contains(&depth) {
        return Err(Error::Domain(format!("integral form only for depth 1 or 2, got {depth}")));
    }
    if n == 0 || n > MAX_INTEGRAL_N {
        return Err(Error::InvalidParameter(format!("N must be in 1..={MAX_INTEGRAL_N}, got {n}")));
    }
    if nus.len() != depth - 1 {
        return Err(Error::InvalidParameter("wrong number of offsets".into()));
    }
    if lambda == 0.0 && depth == 2 {
        return Ok(f64::INFINITY);
    }
    let all_nus: Vec<f64> = std::iter::once(0.0).chain(nus.iter().map(|&v| v as f64)).collect();
    let log_prefactor: f64 = all_nus
        .iter()
        .map(|nu| (nu - 1.0) * std::f64::consts::LN_2 - 0.5 * (2.0 * PI).ln())
        .sum();
    // log ∏_d Γ(k+ν_d+1) for k = 0..N−1
    let log_denoms: Vec<f64> =
        (0..n).map(|k| all_nus.iter().map(|nu| lgamma(k as f64 + nu + 1.0)).sum()).collect();
    let log_w_lambda = weight_real_log(lambda, depth, nus)?;

    let log_w = |x: f64| weight_real_log(x, depth, nus).unwrap_or(f64::NEG_INFINITY);
    let integrand = |x: f64| {
        let xl = x * lambda;
        if xl == 0.0 {
            return (lambda - x).abs() * (log_w(x) - log_denoms[0]).exp();
        }
        let base = log_w(x);
        let log_xl = xl.abs().ln();
        let negative = xl < 0.0;
        let sum: f64 = log_denoms
            .iter()
            .enumerate()
            .map(|(k, ld)| {
                let t = (base + k as f64 * log_xl - ld).exp();
                if negative && k % 2 == 1 {
                    -t
                } else {
                    t
                }
            })
            .sum();
        (lambda - x).abs() * sum
    };

    let reach = match depth {
        1 => lambda.abs().max((4.0 * n as f64).sqrt()) + 12.0,
        _ => lambda.abs().max(2.0 * (n + nus[0]) as f64) + 60.0,
    };
    let peak = (0..=400)
        .map(|j| integrand(-reach + 2.0 * reach * j as f64 / 400.0).abs())
        .fold(0.0, f64::max);
    let abs_tol = 1e-12 * peak.max(f64::MIN_POSITIVE);
    // x = ±t⁴ on each side of the origin removes the logarithmic weight
    // singularity there (two layers, ν = 0)
    let side = |sign: f64| {
        let lam_t = (sign * lambda).max(0.0).powf(0.25);
        let g = |t: f64| {
            let t3 = t * t * t;
            4.0 * t3 * integrand(sign * t3 * t)
        };
        let mut breaks = vec![0.0, reach.powf(0.25)];
        if lam_t > 0.0 {
            breaks.insert(1, lam_t);
        }
        integrate_panels(g, &breaks, 0.5 * abs_tol, 1e-12)
    };
    let integral = side(1.0)? + side(-1.0)?;
    let mut density = (log_prefactor + log_w_lambda).exp() * integral;
    if n % 2 == 0 {
        let log_moment = z_ratio_log(n, depth, nus)?;
        density += (log_w_lambda + n as f64 * lambda.abs().ln() - log_moment).exp();
    }
    Ok(density)
}

/// Limiting real density near the spectral edge at `λ = √N + ζ`:
/// `erfc(√2 ζ)/√(8π) + e^{−ζ²}(1 + erf ζ)/√(16π)`.
pub fn edge_density(zeta: f64) -> f64 {
    erfc(std::f64::consts::SQRT_2 * zeta) / (8.0 * PI).sqrt()
        + (-zeta * zeta).exp() * (1.0 + erf(zeta)) / (16.0 * PI).sqrt()
}
