//! Sample paths at three smoothness scales and where they cross `y = x`.

use fprmt::fieldsim::{count_fixed_points_1d, default_dx, fixed_point_abscissas, sample_field_1d, KernelSpec};

fn main() -> fprmt::Result<()> {
    for sigma in [0.2, 1.0, 5.0] {
        let grid = sample_field_1d(KernelSpec::squared_exponential(sigma)?, 4.0, default_dx(sigma), 2024)?;
        let xs = fixed_point_abscissas(&grid);
        assert_eq!(xs.len(), count_fixed_points_1d(&grid));
        let shown: Vec<String> = xs.iter().map(|x| format!("{x:.3}")).collect();
        println!("σ = {sigma}: {} points, {} fixed points at [{}]", grid.points.len(), xs.len(), shown.join(", "));
        // coarse ASCII trace of f(x) − x
        let step = grid.points.len() / 40;
        let line: String = grid
            .points
            .iter()
            .zip(&grid.values)
            .step_by(step.max(1))
            .map(|(x, f)| if f > x { '+' } else { '-' })
            .collect();
        println!("  sign of f(x) − x: {line}");
    }
    Ok(())
}
