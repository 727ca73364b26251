use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::{check_depth, check_sigma_hat};
use crate::quad::{gauss_legendre, integrate, MAX_DEPTH};
use crate::Result;

/// `C(σ̂) = lim (1/N) log E[#fixed points]` for depth `D`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComplexityPoint {
    pub sigma_hat: f64,
    pub depth: usize,
    pub value: f64,
}

impl ComplexityPoint {
    pub fn new(sigma_hat: f64, depth: usize) -> Result<Self> {
        Ok(Self { sigma_hat, depth, value: complexity(sigma_hat, depth)? })
    }
}

/// `D (log σ̂ + ½(1/σ̂² − 1))` above `σ̂ = 1`, zero below.
pub fn complexity(sigma_hat: f64, depth: usize) -> Result<f64> {
    check_sigma_hat(sigma_hat)?;
    check_depth(depth)?;
    if sigma_hat <= 1.0 {
        return Ok(0.0);
    }
    Ok(depth as f64 * (sigma_hat.ln() + 0.5 * (1.0 / (sigma_hat * sigma_hat) - 1.0)))
}

/// `(1/2π) ∫_0^{2π} log|R e^{iθ} − 1| dθ` by adaptive quadrature.
pub fn angular_log_mean(r: f64) -> Result<f64> {
    // θ = π t³ clusters nodes at the log singularity θ = 0 when R ≈ 1
    let f = |t: f64| {
        if t == 0.0 {
            return 0.0;
        }
        let half = 0.5 * PI * t * t * t;
        let arg = (r - 1.0).powi(2) + 4.0 * r * half.sin().powi(2);
        0.5 * arg.ln() * 3.0 * PI * t * t
    };
    Ok(integrate(f, 0.0, 1.0, 1e-13, 1e-13, MAX_DEPTH)? / PI)
}

/// The complexity as the average of `log|σ̂^D z − 1|` over the limiting
/// complex spectral density.
///
/// In polar form with `r = u^D` this is `2 ∫_0^1 u A((σ̂u)^D) du`, `A` the
/// angular mean. The radial integral uses `nodes`-point Gauss–Legendre on
/// each side of the kink at `u = 1/σ̂`.
pub fn complexity_via_integral(sigma_hat: f64, depth: usize, nodes: usize) -> Result<f64> {
    check_sigma_hat(sigma_hat)?;
    check_depth(depth)?;
    if nodes < 64 {
        return Err(crate::Error::InvalidParameter(format!("need at least 64 nodes, got {nodes}")));
    }
    let rule = gauss_legendre(nodes);
    let d = depth as i32;
    let radial = |u: f64| -> Result<f64> { Ok(2.0 * u * angular_log_mean((sigma_hat * u).powi(d))?) };
    let panel = |a: f64, b: f64| -> Result<f64> {
        let (c, h) = (0.5 * (a + b), 0.5 * (b - a));
        rule.0.iter().zip(&rule.1).try_fold(0.0, |acc, (x, w)| Ok(acc + w * h * radial(c + h * x)?))
    };
    let kink = 1.0 / sigma_hat;
    if kink < 1.0 {
        Ok(panel(0.0, kink)? + panel(kink, 1.0)?)
    } else {
        panel(0.0, 1.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(s: f64, d: usize) -> f64 {
        complexity(s, d).unwrap()
    }

    #[test]
    fn closed_form_values() {
        assert_eq!(c(0.5, 3), 0.0);
        assert_eq!(c(1.0, 2), 0.0);
        assert!((c(2.0, 1) - (2f64.ln() - 0.375)).abs() < 1e-15);
        assert!(complexity(0.0, 1).is_err());
        assert!(complexity(1.5, 0).is_err());
    }

    #[test]
    fn one_sided_derivatives_at_threshold() {
        // C(1 + ε) = D ε² − (5/3) D ε³ + O(ε⁴): C' is continuous, C'' jumps by 2D
        let h = 1e-3;
        for d in 1..=3 {
            let f = |k: f64| c(1.0 + k * h, d);
            let d1 = (-3.0 * f(0.0) + 4.0 * f(1.0) - f(2.0)) / (2.0 * h);
            let d2 = (2.0 * f(0.0) - 5.0 * f(1.0) + 4.0 * f(2.0) - f(3.0)) / (h * h);
            assert!(d1.abs() < 1e-5, "D={d} C'={d1}");
            assert!((d2 - 2.0 * d as f64).abs() < 1e-3 * d as f64, "D={d} C''={d2}");
            assert_eq!(c(1.0 - h, d), 0.0);
        }
    }

    #[test]
    fn angular_identity() {
        assert!((angular_log_mean(3.0).unwrap() - 3f64.ln()).abs() < 1e-12);
        assert!(angular_log_mean(0.4).unwrap().abs() < 1e-12);
    }

    #[test]
    fn polar_quadrature_matches_closed_form() {
        assert!(complexity_via_integral(0.5, 2, 64).unwrap().abs() < 1e-8);
        let v = complexity_via_integral(2.0, 1, 64).unwrap();
        assert!((v - 0.318_147_180_559_945_3).abs() < 1e-6);
        assert!(complexity_via_integral(2.0, 1, 10).is_err());
    }
}
