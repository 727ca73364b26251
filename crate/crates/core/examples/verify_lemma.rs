//! `E|det(X − I)|` for N×N products equals a weighted real-eigenvalue
//! density of (N+1)×(N+1) products. Both sides by Monte Carlo.

use fprmt::analytic::{finite_n_real_density_d1, lemma_rhs_log};
use fprmt::cli::lemma_bandwidth;
use fprmt::ensemble::{estimate_abs_det_expectation, estimate_real_density_at, McConfig};
use fprmt::ModelSpec;

fn main() -> fprmt::Result<()> {
    let mc = McConfig::new(200_000, 5, 4);
    for (n, nus, sigma) in [(1usize, vec![], 1.0), (3, vec![], 0.8), (2, vec![1usize], 1.0)] {
        let depth = nus.len() + 1;
        let spec = ModelSpec::new(n, nus, vec![sigma; depth])?;
        let lhs = estimate_abs_det_expectation(&spec, &mc)?;
        let point = (-(depth as f64) * spec.log_sigma_bar()).exp();
        let big = spec.standardized().with_base_dim(n + 1)?;
        let dens = estimate_real_density_at(&big, point, lemma_bandwidth(&spec), &McConfig { seed: 6, ..mc })?;
        let rhs = lemma_rhs_log(&spec, dens.density)?;
        print!(
            "N = {n}, D = {depth}: log LHS {:.4} ± {:.4}, log RHS {:.4} ± {:.4}",
            lhs.log_mean,
            lhs.rel_stderr,
            rhs,
            dens.stderr / dens.density
        );
        if depth == 1 {
            // the one-layer density is known in closed form
            let exact = lemma_rhs_log(&spec, finite_n_real_density_d1(n, point)?)?;
            print!(", closed-form RHS {exact:.4}");
        }
        println!();
    }
    Ok(())
}
