use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// A layered system: depth `D`, base dimension `N`, the dimension offsets
/// `ν_1..ν_{D-1}` of the intermediate layers and the per-layer Jacobian
/// standard deviations `σ_1..σ_D`.
///
/// Layer `d` maps `R^{N_d} → R^{N_{d-1}}` with `N_0 = N_D = N` and
/// `N_d = N + ν_d`, so its Jacobian is an `N_{d-1} × N_d` matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelSpec {
    depth: usize,
    base_dim: usize,
    nus: Vec<usize>,
    sigmas: Vec<f64>,
}

impl ModelSpec {
    pub fn new(base_dim: usize, nus: Vec<usize>, sigmas: Vec<f64>) -> Result<Self> {
        let depth = sigmas.len();
        if depth == 0 {
            return Err(Error::InvalidParameter("at least one layer sigma is required".into()));
        }
        if base_dim == 0 {
            return Err(Error::InvalidParameter("base dimension must be >= 1".into()));
        }
        if nus.len() != depth - 1 {
            return Err(Error::InvalidParameter(format!(
                "depth {depth} needs {} offsets, got {}",
                depth - 1,
                nus.len()
            )));
        }
        if let Some(s) = sigmas.iter().find(|s| !(**s > 0.0) || !s.is_finite()) {
            return Err(Error::InvalidParameter(format!("layer sigma must be positive, got {s}")));
        }
        Ok(Self { depth, base_dim, nus, sigmas })
    }

    /// Single layer, `N × N` Jacobian with entry deviation `sigma`.
    pub fn single(base_dim: usize, sigma: f64) -> Result<Self> {
        Self::new(base_dim, Vec::new(), vec![sigma])
    }

    /// All layers share the deviation that puts the system at the given
    /// rescaled deviation `σ̂ = σ̄ √N`.
    pub fn from_sigma_hat(base_dim: usize, nus: Vec<usize>, sigma_hat: f64) -> Result<Self> {
        let depth = nus.len() + 1;
        let sigma = sigma_hat / (base_dim as f64).sqrt();
        Self::new(base_dim, nus, vec![sigma; depth])
    }

    /// Unit-variance layers (the standardized ensemble).
    pub fn standard(base_dim: usize, nus: Vec<usize>) -> Result<Self> {
        let depth = nus.len() + 1;
        Self::new(base_dim, nus, vec![1.0; depth])
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn base_dim(&self) -> usize {
        self.base_dim
    }

    pub fn nus(&self) -> &[usize] {
        &self.nus
    }

    pub fn sigmas(&self) -> &[f64] {
        &self.sigmas
    }

    pub fn sum_nu(&self) -> usize {
        self.nus.iter().sum()
    }

    /// Layer dimensions `N_0, N_1, ..., N_D`.
    pub fn dims(&self) -> Vec<usize> {
        let n = self.base_dim;
        std::iter::once(n)
            .chain(self.nus.iter().map(|nu| n + nu))
            .chain(std::iter::once(n))
            .collect()
    }

    /// `log σ̄ = (1/D) Σ log σ_d`.
    pub fn log_sigma_bar(&self) -> f64 {
        self.sigmas.iter().map(|s| s.ln()).sum::<f64>() / self.depth as f64
    }

    /// Geometric mean `σ̄ = (σ_1 ⋯ σ_D)^{1/D}`.
    pub fn sigma_bar(&self) -> f64 {
        self.log_sigma_bar().exp()
    }

    /// Rescaled deviation `σ̂ = σ̄ √N`; the transition sits at `σ̂ = 1`.
    pub fn sigma_hat(&self) -> f64 {
        self.sigma_bar() * (self.base_dim as f64).sqrt()
    }

    pub fn log_sigma_hat(&self) -> f64 {
        self.log_sigma_bar() + 0.5 * (self.base_dim as f64).ln()
    }

    /// Same layer structure with a different base dimension.
    pub fn with_base_dim(&self, base_dim: usize) -> Result<Self> {
        Self::new(base_dim, self.nus.clone(), self.sigmas.clone())
    }

    /// Same layer structure with unit variances.
    pub fn standardized(&self) -> Self {
        Self { sigmas: vec![1.0; self.depth], ..self.clone() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sigma_bar_in_log_space() {
        let spec = ModelSpec::new(3, vec![0, 2], vec![1e200, 1e200, 1e-100]).unwrap();
        let expect = (1e200f64.ln() * 2.0 + 1e-100f64.ln()) / 3.0;
        assert!((spec.log_sigma_bar() - expect).abs() < 1e-12);
        assert_eq!(spec.dims(), vec![3, 3, 5, 3]);
    }

    #[test]
    fn sigma_hat_round_trip() {
        let spec = ModelSpec::from_sigma_hat(50, vec![1, 2], 1.5).unwrap();
        assert!((spec.sigma_hat() - 1.5).abs() < 1e-14);
        assert_eq!(spec.depth(), 3);
    }

    #[test]
    fn rejects_bad_specs() {
        assert!(ModelSpec::new(0, vec![], vec![1.0]).is_err());
        assert!(ModelSpec::new(2, vec![], vec![]).is_err());
        assert!(ModelSpec::new(2, vec![1], vec![1.0]).is_err());
        assert!(ModelSpec::new(2, vec![], vec![-1.0]).is_err());
        assert!(ModelSpec::new(2, vec![], vec![0.0]).is_err());
    }
}
