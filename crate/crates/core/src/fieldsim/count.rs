use super::sampler::{FieldSampler, KernelSpec};
use super::FieldGrid;
use crate::linalg::StreamKey;
use crate::{Error, Result};

/// Number of roots of a sampled function: one per sign change between
/// consecutive nonzero samples, one per run of exact zeros.
pub fn count_sign_changes(g: &[f64]) -> usize {
    root_brackets(g).len()
}

// (i, j): root between samples i and j (j = i + 1 for a sign change; a
// zero run covers i..=j)
fn root_brackets(g: &[f64]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    let mut i = 0;
    while i < g.len() {
        if g[i] == 0.0 {
            let start = i;
            while i + 1 < g.len() && g[i + 1] == 0.0 {
                i += 1;
            }
            out.push((start, i));
        } else if i + 1 < g.len() && g[i + 1] != 0.0 && (g[i] > 0.0) != (g[i + 1] > 0.0) {
            out.push((i, i + 1));
        }
        i += 1;
    }
    out
}

fn residual(field: &FieldGrid) -> Vec<f64> {
    field.values.iter().zip(&field.points).map(|(v, x)| v - x).collect()
}

/// Grid count of the solutions of `f(x) = x`.
pub fn count_fixed_points_1d(field: &FieldGrid) -> usize {
    count_sign_changes(&residual(field))
}

/// Abscissas of the counted fixed points: linear interpolation across a
/// sign change, midpoint of a run of exact zeros.
pub fn fixed_point_abscissas(field: &FieldGrid) -> Vec<f64> {
    let g = residual(field);
    let x = &field.points;
    root_brackets(&g)
        .into_iter()
        .map(|(i, j)| {
            if g[i] == 0.0 {
                0.5 * (x[i] + x[j])
            } else {
                x[i] + (x[j] - x[i]) * g[i] / (g[i] - g[j])
            }
        })
        .collect()
}

/// Monotone piecewise-cubic (Fritsch–Carlson) interpolant on a uniform grid.
#[derive(Debug, Clone)]
pub struct Pchip {
    x0: f64,
    h: f64,
    y: Vec<f64>,
    d: Vec<f64>,
}

fn edge_slope(d0: f64, d1: f64) -> f64 {
    // three-point one-sided estimate, kept shape-preserving
    let d = (3.0 * d0 - d1) / 2.0;
    if d.signum() != d0.signum() {
        0.0
    } else if d0.signum() != d1.signum() && d.abs() > 3.0 * d0.abs() {
        3.0 * d0
    } else {
        d
    }
}

impl Pchip {
    pub fn new(x0: f64, h: f64, y: Vec<f64>) -> Result<Self> {
        let n = y.len();
        if n < 2 || !(h > 0.0) {
            return Err(Error::InvalidParameter("interpolation needs two points and h > 0".into()));
        }
        let delta: Vec<f64> = y.windows(2).map(|w| (w[1] - w[0]) / h).collect();
        let mut d = vec![0.0; n];
        if n == 2 {
            d[0] = delta[0];
            d[1] = delta[0];
        } else {
            for i in 1..n - 1 {
                let (a, b) = (delta[i - 1], delta[i]);
                d[i] = if a * b <= 0.0 { 0.0 } else { 2.0 / (1.0 / a + 1.0 / b) };
            }
            d[0] = edge_slope(delta[0], delta[1]);
            d[n - 1] = edge_slope(delta[n - 2], delta[n - 3]);
        }
        Ok(Self { x0, h, y, d })
    }

    pub fn x_max(&self) -> f64 {
        self.x0 + self.h * (self.y.len() - 1) as f64
    }

    /// Value at `x`; `None` outside the grid.
    pub fn eval(&self, x: f64) -> Option<f64> {
        let n = self.y.len();
        let s = (x - self.x0) / self.h;
        if !(s >= 0.0) || s > (n - 1) as f64 * (1.0 + 1e-15) {
            return None;
        }
        let i = (s.floor() as usize).min(n - 2);
        let t = s - i as f64;
        let (t2, t3) = (t * t, t * t * t);
        let h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
        let h10 = t3 - 2.0 * t2 + t;
        let h01 = -2.0 * t3 + 3.0 * t2;
        let h11 = t3 - t2;
        Some(
            h00 * self.y[i] + h10 * self.h * self.d[i] + h01 * self.y[i + 1] + h11 * self.h * self.d[i + 1],
        )
    }
}

/// Grid values of `f₁(f₂(x)) − x`, with `f₁` interpolated at the points
/// `f₂(x_i)`.
pub(crate) fn composed_residual(
    outer_points: &[f64],
    outer_values: Vec<f64>,
    inner_points: &[f64],
    inner_values: &[f64],
) -> Result<Vec<f64>> {
    let h = outer_points[1] - outer_points[0];
    let interp = Pchip::new(outer_points[0], h, outer_values)?;
    inner_values
        .iter()
        .zip(inner_points)
        .map(|(&u, &x)| {
            interp.eval(u).map(|v| v - x).ok_or(Error::OutOfRange {
                value: u,
                half_width: -outer_points[0],
            })
        })
        .collect()
}

/// Fixed points of `f₁ ∘ f₂` for independent fields with deviations
/// `σ₁, σ₂`, both on `[−L, L]` with spacing `dx`. `f₁` uses stream 0 and
/// `f₂` stream 1 of `seed`.
pub fn compose_and_count(sigma1: f64, sigma2: f64, half_width: f64, dx: f64, seed: u64) -> Result<usize> {
    let outer = FieldSampler::new(KernelSpec::squared_exponential(sigma1)?, half_width, dx)?;
    let inner = FieldSampler::new(KernelSpec::squared_exponential(sigma2)?, half_width, dx)?;
    let f1 = outer.sample(StreamKey::new(seed, 0));
    let f2 = inner.sample(StreamKey::new(seed, 1));
    let g = composed_residual(outer.points(), f1, inner.points(), &f2)?;
    Ok(count_sign_changes(&g))
}
