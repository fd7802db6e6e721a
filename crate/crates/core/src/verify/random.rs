//! Seeded generators and exhaustive enumerations of test inputs.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::linalg::Matrix;
use crate::quiver::Quiver;

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A quiver on `1..=max_vertices` vertices where each ordered pair carries
/// `1..=max_mult` parallel arrows with probability `density`.
pub fn random_quiver<R: Rng>(rng: &mut R, max_vertices: usize, max_mult: usize, density: f64) -> Quiver {
    let n = rng.gen_range(1..=max_vertices.max(1));
    let counts: Vec<Vec<usize>> = (0..n)
        .map(|_| {
            (0..n)
                .map(|_| if max_mult > 0 && rng.gen_bool(density) { rng.gen_range(1..=max_mult) } else { 0 })
                .collect()
        })
        .collect();
    Quiver::from_adjacency(&counts)
}

/// A matrix of shape at most `max_rows x max_cols` (zero dimensions included)
/// with entries in `[-bound, bound]`.
pub fn random_matrix<R: Rng>(rng: &mut R, max_rows: usize, max_cols: usize, bound: i64) -> Matrix<BigInt> {
    let rows = rng.gen_range(0..=max_rows);
    let cols = rng.gen_range(0..=max_cols);
    Matrix::from_fn(rows, cols, |_, _| BigInt::from(rng.gen_range(-bound..=bound)))
}

/// Every quiver on `0..=max_vertices` vertices `v0, v1, ...` with each ordered
/// pair carrying `0..=max_mult` arrows.
pub fn exhaustive_quivers(max_vertices: usize, max_mult: usize) -> impl Iterator<Item = Quiver> {
    (0..=max_vertices).flat_map(move |n| {
        let cells = n * n;
        let base = max_mult + 1;
        let total = base.pow(cells as u32);
        (0..total).map(move |mut code| {
            let mut counts = vec![vec![0; n]; n];
            for k in 0..cells {
                counts[k / n][k % n] = code % base;
                code /= base;
            }
            Quiver::from_adjacency(&counts)
        })
    })
}
