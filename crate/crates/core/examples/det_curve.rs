//! `(1/N) log E|det(J₁⋯J_D − I)|` across the transition at σ̂ = 1, next to
//! the large-N law.

use fprmt::analytic::{complexity, mean_fixed_points_asymptotic_log};
use fprmt::ensemble::{estimate_abs_det_expectation, McConfig};
use fprmt::ModelSpec;

fn main() -> fprmt::Result<()> {
    let n = 30;
    for depth in 1..=3 {
        println!("D = {depth}, N = {n}");
        println!("{:>6} {:>12} {:>10} {:>12} {:>10}", "σ̂", "MC/N", "±", "large-N/N", "C(σ̂)");
        for k in 0..8 {
            let s = 0.4 + 0.2 * k as f64;
            let spec = ModelSpec::from_sigma_hat(n, vec![0; depth - 1], s)?;
            let est = estimate_abs_det_expectation(&spec, &McConfig::new(2000, 7, 4))?;
            let pred = mean_fixed_points_asymptotic_log(&spec);
            let flag = if pred.near_critical { " (near critical)" } else { "" };
            println!(
                "{s:>6.2} {:>12.5} {:>10.5} {:>12.5} {:>10.5}{flag}",
                est.log_mean / n as f64,
                est.rel_stderr / n as f64,
                pred.log_value / n as f64,
                complexity(s, depth)?
            );
        }
    }
    Ok(())
}
