//! Closed forms and large-N asymptotics for the mean number of fixed
//! points and for the spectrum of products of real Ginibre matrices.
//!
//! Everything that multiplies factors which under- or overflow at moderate
//! `N` is assembled in log space.

mod complexity;
mod density;
mod fixed_points;
mod weights;

pub use complexity::{angular_log_mean, complexity, complexity_via_integral, ComplexityPoint};
pub use density::{
    edge_density, finite_n_real_density_d1, finite_n_real_density_integral,
    global_density_complex, global_density_real, MAX_INTEGRAL_N,
};
pub use fixed_points::{
    lemma_rhs_log, low_density_approx_log, mean_fixed_points_asymptotic_log,
    mean_fixed_points_exact_1_1, rescaled_prefactor_log, AsymptoticPrediction, Regime,
    NEAR_CRITICAL_WIDTH,
};
pub use weights::{weight_real_asymptotic_log, weight_real_log, z_ratio_log, z_ratio_stirling_log};

use crate::{Error, Result};

pub(crate) fn check_sigma_hat(sigma_hat: f64) -> Result<()> {
    if sigma_hat > 0.0 && sigma_hat.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("sigma_hat must be positive, got {sigma_hat}")))
    }
}

pub(crate) fn check_depth(depth: usize) -> Result<()> {
    if depth >= 1 {
        Ok(())
    } else {
        Err(Error::InvalidParameter("depth must be >= 1".into()))
    }
}
