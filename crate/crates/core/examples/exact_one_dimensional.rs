//! One map `f: R → R`, three ways: the closed form, sampled fields, and
//! `E|x − 1|` over 1×1 "matrices".

use fprmt::analytic::mean_fixed_points_exact_1_1;
use fprmt::ensemble::{estimate_abs_det_expectation, McConfig};
use fprmt::fieldsim::{default_dx, estimate_field_mean_count, KernelSpec, DEFAULT_HALF_WIDTH};
use fprmt::ModelSpec;

fn main() -> fprmt::Result<()> {
    println!("{:>6} {:>10} {:>18} {:>18}", "sigma", "exact", "matrix MC", "field MC");
    for sigma in [0.2, 0.5, 1.0, 2.0, 5.0] {
        let exact = mean_fixed_points_exact_1_1(sigma)?;
        let det = estimate_abs_det_expectation(&ModelSpec::single(1, sigma)?, &McConfig::new(200_000, 1, 4))?;
        let m = det.log_mean.exp();
        let kernel = KernelSpec::squared_exponential(sigma)?;
        let field = estimate_field_mean_count(kernel, DEFAULT_HALF_WIDTH, default_dx(sigma), &McConfig::new(5_000, 2, 4))?;
        println!(
            "{sigma:>6} {exact:>10.5} {:>10.5} ± {:.4} {:>10.5} ± {:.4}",
            m,
            m * det.rel_stderr,
            field.mean,
            field.stderr
        );
    }
    Ok(())
}
