use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use super::{DenseMatrix, ModelSpec};

const RETRY_SALT: u64 = 0x9e37_79b9_7f4a_7c15;

/// Address of one independent random stream: ChaCha8 keyed by `seed`,
/// stream id `index`. Sample `i` of every estimator draws from
/// `StreamKey::new(seed, i)`, so results do not depend on how samples are
/// distributed over workers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StreamKey {
    pub seed: u64,
    pub index: u64,
}

impl StreamKey {
    pub fn new(seed: u64, index: u64) -> Self {
        Self { seed, index }
    }

    pub fn rng(self) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(self.index);
        rng
    }

    /// A disjoint stream for re-drawing a sample after a numerical failure.
    pub fn perturbed(self) -> Self {
        Self { seed: self.seed ^ RETRY_SALT, index: self.index }
    }
}

/// `rows × cols` matrix of i.i.d. `N(0, σ²)` entries, filled row by row.
pub fn sample_ginibre<R: rand::Rng + ?Sized>(
    rows: usize,
    cols: usize,
    sigma: f64,
    rng: &mut R,
) -> DenseMatrix {
    let data = (0..rows * cols)
        .map(|_| {
            let z: f64 = StandardNormal.sample(rng);
            sigma * z
        })
        .collect();
    DenseMatrix::from_row_major(rows, cols, data)
}

fn sample_layers<R: rand::Rng + ?Sized>(spec: &ModelSpec, rng: &mut R) -> Vec<DenseMatrix> {
    let dims = spec.dims();
    spec.sigmas()
        .iter()
        .enumerate()
        .map(|(d, &sigma)| sample_ginibre(dims[d], dims[d + 1], sigma, rng))
        .collect()
}

/// `J_1 J_2 ⋯ J_D` with fresh layers, associated left to right.
pub fn product_chain<R: rand::Rng + ?Sized>(spec: &ModelSpec, rng: &mut R) -> DenseMatrix {
    let mut layers = sample_layers(spec, rng).into_iter();
    let first = layers.next().expect("depth >= 1");
    layers.fold(first, |acc, j| acc.matmul(&j))
}

/// Both `J_1 J_2 ⋯ J_D` (`N × N`) and its cyclic shift `J_2 ⋯ J_D J_1`
/// (`N_1 × N_1`) built from the same layer draw.
pub fn product_chain_cyclic<R: rand::Rng + ?Sized>(
    spec: &ModelSpec,
    rng: &mut R,
) -> (DenseMatrix, DenseMatrix) {
    let layers = sample_layers(spec, rng);
    let forward = layers[1..].iter().fold(layers[0].clone(), |acc, j| acc.matmul(j));
    let mut cycle = layers[1..].iter().chain(std::iter::once(&layers[0]));
    let head = cycle.next().expect("depth >= 1").clone();
    let rotated = cycle.fold(head, |acc, j| acc.matmul(j));
    (forward, rotated)
}
