//! Numerical integration: adaptive Gauss–Kronrod (7/15) and fixed
//! Gauss–Legendre rules.

use crate::{Error, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_83,
];
// Gauss weights for the nodes XGK[1], XGK[3], XGK[5], XGK[7]
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// Default recursion depth cap for [`integrate`].
pub const MAX_DEPTH: usize = 40;

fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let dx = h * XGK[j];
        let fsum = f(c - dx) + f(c + dx);
        kronrod += WGK[j] * fsum;
        if j % 2 == 1 {
            gauss += WG[j / 2] * fsum;
        }
    }
    (kronrod * h, ((kronrod - gauss) * h).abs())
}

/// Panel budget of [`integrate`].
pub const MAX_PANELS: usize = 5000;

struct Panel {
    a: f64,
    b: f64,
    est: f64,
    err: f64,
    depth: usize,
}

/// Globally adaptive Gauss–Kronrod integration of `f` over `[a, b]`.
///
/// The panel with the largest Kronrod/Gauss difference is bisected until the
/// summed difference is below `max(abs_tol, rel_tol·|I|)`. Bisecting a panel
/// past `max_depth` levels, or exceeding [`MAX_PANELS`], is an error.
pub fn integrate<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    abs_tol: f64,
    rel_tol: f64,
    max_depth: usize,
) -> Result<f64> {
    if a == b {
        return Ok(0.0);
    }
    let (est, err) = gk15(&f, a, b);
    let mut panels = vec![Panel { a, b, est, err, depth: 0 }];
    loop {
        let total: f64 = panels.iter().map(|p| p.est).sum();
        let total_err: f64 = panels.iter().map(|p| p.err).sum();
        if total_err <= abs_tol.max(rel_tol * total.abs()) || total_err == 0.0 {
            return Ok(total);
        }
        if !total_err.is_finite() {
            return Err(Error::QuadratureFailure { depth: 0 });
        }
        let worst = panels
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.err.total_cmp(&y.1.err))
            .map(|(i, _)| i)
            .expect("non-empty");
        let p = panels.swap_remove(worst);
        if p.depth >= max_depth || panels.len() + 2 > MAX_PANELS {
            return Err(Error::QuadratureFailure { depth: p.depth });
        }
        let m = 0.5 * (p.a + p.b);
        let (l, el) = gk15(&f, p.a, m);
        let (r, er) = gk15(&f, m, p.b);
        panels.push(Panel { a: p.a, b: m, est: l, err: el, depth: p.depth + 1 });
        panels.push(Panel { a: m, b: p.b, est: r, err: er, depth: p.depth + 1 });
    }
}

/// Integrates over consecutive panels `[p_0, p_1], [p_1, p_2], ...`,
/// splitting the absolute tolerance evenly.
pub fn integrate_panels<F: Fn(f64) -> f64>(
    f: F,
    breaks: &[f64],
    abs_tol: f64,
    rel_tol: f64,
) -> Result<f64> {
    let panels = breaks.len().saturating_sub(1).max(1) as f64;
    breaks.windows(2).try_fold(0.0, |acc, w| {
        Ok(acc + integrate(&f, w[0], w[1], abs_tol / panels, rel_tol, MAX_DEPTH)?)
    })
}

/// Nodes and weights of the `n`-point Gauss–Legendre rule on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, z);
            dp = d;
            let dz = p / d;
            z -= dz;
            if dz.abs() < 1e-15 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, z);
        if d != 0.0 {
            dp = d;
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        let wi = 2.0 / ((1.0 - z * z) * dp * dp);
        w[i] = wi;
        w[n - 1 - i] = wi;
    }
    (x, w)
}

fn legendre_with_derivative(n: usize, z: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = z;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * z * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (z * p1 - p0) / (z * z - 1.0);
    (p1, d)
}

/// Fixed Gauss–Legendre quadrature of `f` over `[a, b]`.
pub fn gauss_legendre_integrate<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    nodes: &(Vec<f64>, Vec<f64>),
) -> f64 {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    nodes
        .0
        .iter()
        .zip(&nodes.1)
        .map(|(x, w)| w * f(c + h * x))
        .sum::<f64>()
        * h
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kronrod_is_exact_for_degree_23() {
        let (v, _) = gk15(&|x: f64| x.powi(22) + x.powi(23), -1.0, 1.0);
        assert!((v - 2.0 / 23.0).abs() < 1e-14);
    }

    #[test]
    fn adaptive_handles_kinks() {
        let v = integrate(|x: f64| (x - 0.3).abs(), -1.0, 1.0, 1e-13, 0.0, MAX_DEPTH).unwrap();
        assert!((v - (1.3 * 1.3 + 0.7 * 0.7) / 2.0).abs() < 1e-12);
        let g = integrate_panels(|x: f64| (-x * x / 2.0).exp(), &[-40.0, 0.0, 40.0], 1e-14, 0.0)
            .unwrap();
        assert!((g - (2.0 * std::f64::consts::PI).sqrt()).abs() < 1e-13);
    }

    #[test]
    fn depth_cap_is_reported() {
        let r = integrate(|x: f64| 1.0 / x.abs().sqrt(), -1.0, 1.0, 1e-15, 0.0, 4);
        assert!(matches!(r, Err(Error::QuadratureFailure { .. })));
    }

    #[test]
    fn gauss_legendre_weights_and_exactness() {
        for n in [1usize, 2, 5, 16, 64] {
            let rule = gauss_legendre(n);
            let total: f64 = rule.1.iter().sum();
            assert!((total - 2.0).abs() < 1e-13, "n = {n}");
            let deg = 2 * n - 1;
            let v = gauss_legendre_integrate(|x: f64| x.powi(deg as i32 - 1), 0.0, 1.0, &rule);
            assert!((v - 1.0 / deg as f64).abs() < 1e-13, "n = {n}");
        }
    }
}
