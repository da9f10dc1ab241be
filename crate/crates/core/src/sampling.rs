//! Seeded random states.
//!
//! Every sample index gets its own ChaCha stream derived from `(seed, index)`,
//! so a sample does not depend on how many were drawn before it or on which
//! thread drew it.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha20Rng;
use rand_distr::{Distribution, Exp1, StandardNormal};

use crate::linalg::{ComplexMatrix, C64};
use crate::states::{DensityMatrix, DIM};

/// Counter-based generator for sample `index` under `seed`.
pub fn stream_rng(seed: u64, index: u64) -> ChaCha20Rng {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

fn gaussian_matrix<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |_, _| {
        C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    })
}

/// `G G† / tr(G G†)` for a 9×9 complex Ginibre matrix `G` (Hilbert–Schmidt
/// measure).
pub fn random_density_matrix<R: Rng + ?Sized>(rng: &mut R) -> DensityMatrix {
    random_density_matrix_of_rank(rng, DIM)
}

/// Same construction with a 9×`rank` Ginibre factor.
pub fn random_density_matrix_of_rank<R: Rng + ?Sized>(rng: &mut R, rank: usize) -> DensityMatrix {
    assert!((1..=DIM).contains(&rank), "rank must be in 1..=9");
    let g = gaussian_matrix(rng, DIM, rank);
    let m = &g * &g.adjoint();
    let trace = m.trace().re;
    let m = m.scale_real(1.0 / trace).hermitian_part();
    DensityMatrix::new(m).expect("Ginibre construction yields a density matrix")
}

/// Diagonal state with populations uniform on the probability simplex.
pub fn random_diagonal_state<R: Rng + ?Sized>(rng: &mut R) -> DensityMatrix {
    let mut weights = [0.0f64; DIM];
    for w in weights.iter_mut() {
        *w = Exp1.sample(rng);
    }
    let total: f64 = weights.iter().sum();
    for w in weights.iter_mut() {
        *w /= total;
    }
    DensityMatrix::from_diagonal(&weights).expect("simplex point")
}

/// Haar-random `n×n` unitary from the QR decomposition of a Ginibre matrix.
pub fn random_unitary<R: Rng + ?Sized>(rng: &mut R, n: usize) -> ComplexMatrix {
    let g = gaussian_matrix(rng, n, n);
    let mut q = ComplexMatrix::zeros(n, n);
    // modified Gram–Schmidt on columns
    for j in 0..n {
        let mut col: Vec<C64> = (0..n).map(|i| g[(i, j)]).collect();
        for k in 0..j {
            let dot: C64 = (0..n).map(|i| q[(i, k)].conj() * col[i]).sum();
            for (i, c) in col.iter_mut().enumerate() {
                *c -= dot * q[(i, k)];
            }
        }
        let norm = col.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for (i, c) in col.iter().enumerate() {
            q[(i, j)] = c / norm;
        }
    }
    q
}
