//! One-dimensional Gaussian random maps `f: R → R` and direct counting of
//! the solutions of `x = f(x)` and `x = f₁(f₂(x))`.

mod count;
mod mc;
mod sampler;

pub use count::{
    compose_and_count, count_fixed_points_1d, count_sign_changes, fixed_point_abscissas, Pchip,
};
pub use mc::{
    estimate_composed_mean_count, estimate_field_mean_count, estimate_halving_bias, FieldMcResult,
    HalvingResult,
};
pub use sampler::{
    default_dx, sample_field_1d, FieldGrid, FieldSampler, KernelFamily, KernelSpec,
    DEFAULT_HALF_WIDTH, JITTER_LADDER, MAX_GRID_POINTS,
};
