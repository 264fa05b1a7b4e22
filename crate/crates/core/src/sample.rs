//! Random inputs for verification runs, property tests and benchmarks.
//!
//! Everything takes the RNG explicitly so callers control seeding and runs
//! stay reproducible.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::linalg::ComplexMatrix;
use crate::states::{BlochVector, DensityMatrix};

/// Matrix with independent standard-normal real and imaginary parts.
pub fn gaussian_matrix(rows: usize, cols: usize, rng: &mut impl Rng) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |_, _| {
        Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    })
}

/// Full-rank-biased random state: G·G†/Tr(G·G†) for Gaussian G.
pub fn density(dim: usize, rng: &mut impl Rng) -> DensityMatrix {
    let g = gaussian_matrix(dim, dim, rng);
    let gg = g.matmul(&g.dagger()).expect("square product");
    let trace = gg.trace().expect("square").re;
    let matrix = gg.scale(Complex64::new(1.0 / trace, 0.0));
    DensityMatrix::new(matrix).expect("normalized Gram matrix is a valid state")
}

/// Haar-like random unitary: Gram-Schmidt orthonormalization (two passes,
/// for orthogonality down to round-off) of a Gaussian matrix's columns.
pub fn unitary(dim: usize, rng: &mut impl Rng) -> ComplexMatrix {
    let g = gaussian_matrix(dim, dim, rng);
    let mut columns: Vec<Vec<Complex64>> = (0..dim)
        .map(|j| (0..dim).map(|i| g.get(i, j)).collect())
        .collect();
    for j in 0..dim {
        for _ in 0..2 {
            for i in 0..j {
                let overlap: Complex64 = columns[i]
                    .iter()
                    .zip(&columns[j])
                    .map(|(a, b)| a.conj() * b)
                    .sum();
                for k in 0..dim {
                    let correction = columns[i][k] * overlap;
                    columns[j][k] -= correction;
                }
            }
        }
        let norm: f64 = columns[j]
            .iter()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt();
        for z in &mut columns[j] {
            *z /= norm;
        }
    }
    ComplexMatrix::from_fn(dim, dim, |i, j| columns[j][i])
}

/// Uniform point in the closed unit ball (rejection sampling).
pub fn bloch(rng: &mut impl Rng) -> BlochVector {
    loop {
        let r1 = rng.gen_range(-1.0..=1.0);
        let r2 = rng.gen_range(-1.0..=1.0);
        let r3 = rng.gen_range(-1.0..=1.0);
        if r1 * r1 + r2 * r2 + r3 * r3 <= 1.0 {
            return BlochVector::new(r1, r2, r3).expect("point inside the ball");
        }
    }
}
