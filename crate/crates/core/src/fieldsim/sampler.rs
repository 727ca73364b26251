use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::linalg::StreamKey;
use crate::{Error, Result};

/// Default domain half-width. `|f| ≤ 6` with overwhelming probability, so no
/// solution of `x = f(x)` lies outside `[−8, 8]`.
pub const DEFAULT_HALF_WIDTH: f64 = 8.0;
pub const MAX_GRID_POINTS: usize = 20001;
/// Diagonal loading tried in turn (relative to `κ(0)`) before giving up.
pub const JITTER_LADDER: [f64; 3] = [1e-10, 1e-8, 1e-6];

const BATCH: usize = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum KernelFamily {
    /// `κ(r) = exp(−σ² r)`, covariance `exp(−σ²(x−y)²/2)`.
    SquaredExponential,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KernelSpec {
    pub family: KernelFamily,
    pub sigma: f64,
}

impl KernelSpec {
    pub fn squared_exponential(sigma: f64) -> Result<Self> {
        if !(sigma > 0.0) || !sigma.is_finite() {
            return Err(Error::InvalidParameter(format!("kernel sigma must be positive, got {sigma}")));
        }
        Ok(Self { family: KernelFamily::SquaredExponential, sigma })
    }

    /// Covariance of `f(x)` and `f(y)`.
    pub fn covariance(&self, x: f64, y: f64) -> f64 {
        match self.family {
            KernelFamily::SquaredExponential => {
                let d = self.sigma * (x - y);
                (-0.5 * d * d).exp()
            }
        }
    }
}

/// `min(0.05, 0.05/σ)`: at least 20 grid points per correlation length.
pub fn default_dx(sigma: f64) -> f64 {
    0.05f64.min(0.05 / sigma)
}

/// One sampled path on a uniform grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FieldGrid {
    pub points: Vec<f64>,
    pub values: Vec<f64>,
    pub kernel: KernelSpec,
    pub seed: u64,
}

impl FieldGrid {
    pub fn dx(&self) -> f64 {
        self.points[1] - self.points[0]
    }

    pub fn half_width(&self) -> f64 {
        -self.points[0]
    }
}

/// Cholesky factor of the grid covariance, reusable across samples.
#[derive(Debug, Clone)]
pub struct FieldSampler {
    kernel: KernelSpec,
    points: Vec<f64>,
    // lower factor, row-major packed by rows: row i holds i+1 entries
    factor: Vec<f64>,
    jitter: f64,
}

fn row_start(i: usize) -> usize {
    i * (i + 1) / 2
}

impl FieldSampler {
    /// Grid `−L, −L + dx, ..., L`. Needs `dx ≤ 0.1/σ` and at most
    /// [`MAX_GRID_POINTS`] points.
    pub fn new(kernel: KernelSpec, half_width: f64, dx: f64) -> Result<Self> {
        if !(half_width > 0.0) || !half_width.is_finite() {
            return Err(Error::InvalidParameter(format!("half-width must be positive, got {half_width}")));
        }
        if !(dx > 0.0) || dx > 0.1 / kernel.sigma * (1.0 + 1e-12) {
            return Err(Error::InvalidParameter(format!(
                "grid spacing {dx} must be in (0, 0.1/sigma = {}]",
                0.1 / kernel.sigma
            )));
        }
        let steps = (2.0 * half_width / dx).round();
        if steps + 1.0 > MAX_GRID_POINTS as f64 {
            return Err(Error::InvalidParameter(format!(
                "grid of {} points exceeds {MAX_GRID_POINTS}",
                steps + 1.0
            )));
        }
        let n = steps as usize + 1;
        let points: Vec<f64> = (0..n).map(|i| -half_width + i as f64 * dx).collect();
        for &jitter in &JITTER_LADDER {
            if let Some(factor) = cholesky(&kernel, &points, jitter) {
                return Ok(Self { kernel, points, factor, jitter });
            }
        }
        Err(Error::CholeskyFailure { jitter: JITTER_LADDER[JITTER_LADDER.len() - 1] })
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn kernel(&self) -> KernelSpec {
        self.kernel
    }

    /// Diagonal loading that made the factorization succeed.
    pub fn jitter(&self) -> f64 {
        self.jitter
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    fn normals(&self, key: StreamKey) -> Vec<f64> {
        let mut rng = key.rng();
        (0..self.len()).map(|_| StandardNormal.sample(&mut rng)).collect()
    }

    /// One path from stream `key`.
    pub fn sample(&self, key: StreamKey) -> Vec<f64> {
        self.sample_batch(&[key]).pop().expect("one key")
    }

    /// Paths for several streams at once; path `j` is bit-identical to
    /// `sample(keys[j])`.
    pub fn sample_batch(&self, keys: &[StreamKey]) -> Vec<Vec<f64>> {
        let n = self.len();
        let mut out: Vec<Vec<f64>> = Vec::with_capacity(keys.len());
        for chunk in keys.chunks(BATCH) {
            let b = chunk.len();
            // z[k * b + j] is normal k of path j
            let mut z = vec![0.0; n * b];
            for (j, key) in chunk.iter().enumerate() {
                for (k, v) in self.normals(*key).into_iter().enumerate() {
                    z[k * b + j] = v;
                }
            }
            let mut y = vec![0.0; n * b];
            for i in 0..n {
                let row = &self.factor[row_start(i)..row_start(i) + i + 1];
                let acc = &mut y[i * b..(i + 1) * b];
                for (k, &l) in row.iter().enumerate() {
                    let zk = &z[k * b..(k + 1) * b];
                    for (a, &zz) in acc.iter_mut().zip(zk) {
                        *a += l * zz;
                    }
                }
            }
            for j in 0..b {
                out.push((0..n).map(|i| y[i * b + j]).collect());
            }
        }
        out
    }

    pub fn grid(&self, key: StreamKey) -> FieldGrid {
        FieldGrid {
            points: self.points.clone(),
            values: self.sample(key),
            kernel: self.kernel,
            seed: key.seed,
        }
    }
}

fn cholesky(kernel: &KernelSpec, points: &[f64], jitter: f64) -> Option<Vec<f64>> {
    let n = points.len();
    let load = jitter * kernel.covariance(0.0, 0.0);
    let mut l = vec![0.0; row_start(n)];
    for i in 0..n {
        for j in 0..=i {
            let mut s = kernel.covariance(points[i], points[j]);
            if i == j {
                s += load;
            }
            let (ri, rj) = (row_start(i), row_start(j));
            s -= l[ri..ri + j].iter().zip(&l[rj..rj + j]).map(|(a, b)| a * b).sum::<f64>();
            if i == j {
                if !(s > 0.0) {
                    return None;
                }
                l[ri + i] = s.sqrt();
            } else {
                l[ri + j] = s / l[rj + j];
            }
        }
    }
    Some(l)
}

/// Path of the field with the given kernel on `[−L, L]`, stream 0 of `seed`.
pub fn sample_field_1d(kernel: KernelSpec, half_width: f64, dx: f64, seed: u64) -> Result<FieldGrid> {
    Ok(FieldSampler::new(kernel, half_width, dx)?.grid(StreamKey::new(seed, 0)))
}
