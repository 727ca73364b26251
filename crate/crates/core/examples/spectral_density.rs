//! Scaled spectra of products: the real density and the complex radial law.

use fprmt::analytic::{global_density_complex, global_density_real};
use fprmt::ensemble::{ks_radial_test, spectral_histogram, McConfig, Part};
use fprmt::ModelSpec;

fn main() -> fprmt::Result<()> {
    let mc = McConfig::new(300, 3, 4);
    for depth in [1usize, 2] {
        let spec = ModelSpec::standard(100, vec![0; depth - 1])?;
        let real = spectral_histogram(&spec, Part::Real, true, 12, (-1.5, 1.5), &mc)?;
        println!("D = {depth}, real eigenvalues (scaled, per √N)");
        for (c, v) in real.centers().iter().zip(real.global_scaled()) {
            println!("  {c:>6.3} {v:>8.4}   limit {:.4}", global_density_real(*c, depth)?);
        }
        let cplx = spectral_histogram(&spec, Part::ComplexModulus, true, 6, (0.0, 1.5), &mc)?;
        println!("D = {depth}, complex moduli (scaled, per N)");
        for (c, v) in cplx.centers().iter().zip(cplx.global_scaled()) {
            let limit = 2.0 * std::f64::consts::PI * c * global_density_complex(*c, depth)?;
            println!("  {c:>6.3} {v:>8.4}   limit {limit:.4}");
        }
        let ks = ks_radial_test(&spec, &mc)?;
        println!("  KS {:.4}, p = {:.3} over {} picks\n", ks.statistic, ks.p_value, ks.n);
    }
    Ok(())
}
