//! Cyclic Jacobi rotations for Hermitian eigenproblems and one-sided
//! (Hestenes) Jacobi for singular values.

use super::{ComplexMatrix, HermitianMatrix, C64, ZERO};
use crate::error::{Error, Result};

const MAX_SWEEPS: usize = 100;
const COLUMN_FLOOR: f64 = 1e-15;
const OFF_DIAGONAL_TOL: f64 = 1e-14;

/// Eigenvalues (ascending) and the matching unit eigenvectors stored as
/// columns of `vectors`.
#[derive(Clone, Debug)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    pub vectors: ComplexMatrix,
}

impl HermitianEigen {
    /// Largest entrywise deviation of `V diag(λ) V†` from `m`.
    pub fn reconstruction_residual(&self, m: &ComplexMatrix) -> f64 {
        let n = self.values.len();
        let scaled = ComplexMatrix::from_fn(n, n, |i, j| self.vectors[(i, j)] * self.values[j]);
        (&scaled * &self.vectors.adjoint()).max_abs_diff(m)
    }
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.rows();
    let mut sum = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                sum += a[(i, j)].norm_sqr();
            }
        }
    }
    sum.sqrt()
}

/// Full eigendecomposition by cyclic Jacobi sweeps.
///
/// Iterates until the off-diagonal Frobenius mass drops below
/// `1e-14 · ‖M‖_F`.
pub fn hermitian_eigen(m: &HermitianMatrix) -> HermitianEigen {
    let mut a = m.matrix().clone();
    let n = a.rows();
    let mut v = ComplexMatrix::identity(n);
    let threshold = OFF_DIAGONAL_TOL * a.frobenius_norm();

    for _ in 0..MAX_SWEEPS {
        if off_diagonal_norm(&a) <= threshold {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
    order.sort_by(|&i, &j| diag[i].total_cmp(&diag[j]));
    HermitianEigen {
        values: order.iter().map(|&i| diag[i]).collect(),
        vectors: ComplexMatrix::from_fn(n, n, |i, j| v[(i, order[j])]),
    }
}

/// Annihilates `a[p][q]` with `A ← J† A J`, where `J` combines a phase on
/// column `q` with a real plane rotation.
fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let g = apq.norm();
    if g == 0.0 {
        return;
    }
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    // Skip entries already negligible against both diagonals.
    if g < f64::EPSILON * 1e-3 * (app.abs() + aqq.abs()) {
        a[(p, q)] = ZERO;
        a[(q, p)] = ZERO;
        return;
    }
    let phase = apq / g;
    let theta = (aqq - app) / (2.0 * g);
    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
    let t = if theta == 0.0 { 1.0 } else { t };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    // J = [[c, s], [-s·e^{-iθ}, c·e^{-iθ}]] on the (p, q) plane.
    let jpp = C64::new(c, 0.0);
    let jpq = C64::new(s, 0.0);
    let jqp = -phase.conj() * s;
    let jqq = phase.conj() * c;

    let n = a.rows();
    for k in 0..n {
        let x = a[(k, p)];
        let y = a[(k, q)];
        a[(k, p)] = x * jpp + y * jqp;
        a[(k, q)] = x * jpq + y * jqq;
    }
    for k in 0..n {
        let x = a[(p, k)];
        let y = a[(q, k)];
        a[(p, k)] = jpp.conj() * x + jqp.conj() * y;
        a[(q, k)] = jpq.conj() * x + jqq.conj() * y;
    }
    a[(p, q)] = ZERO;
    a[(q, p)] = ZERO;
    a[(p, p)] = C64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = C64::new(a[(q, q)].re, 0.0);

    for k in 0..n {
        let x = v[(k, p)];
        let y = v[(k, q)];
        v[(k, p)] = x * jpp + y * jqp;
        v[(k, q)] = x * jpq + y * jqq;
    }
}

/// Ascending eigenvalues of a Hermitian matrix.
pub fn hermitian_eigenvalues(m: &HermitianMatrix) -> Vec<f64> {
    hermitian_eigen(m).values
}

/// Singular values in descending order.
///
/// One-sided Jacobi: columns of `M` are orthogonalized pairwise by the
/// rotations that would diagonalize `M†M`, without forming `M†M`. The
/// squared column norms are the eigenvalues of `M†M`; computing their roots
/// this way keeps small singular values accurate to `ε‖M‖` rather than
/// `√ε‖M‖`.
pub fn singular_values(m: &ComplexMatrix) -> Result<Vec<f64>> {
    m.check_finite()?;
    let mut a = m.clone();
    let (rows, cols) = (a.rows(), a.cols());
    // columns this small are rounding noise left by earlier rotations;
    // orthogonalizing them against the rest never settles
    let floor = (COLUMN_FLOOR * m.frobenius_norm()).powi(2);
    let tol = rows as f64 * f64::EPSILON;

    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..cols {
            for q in p + 1..cols {
                let mut alpha = 0.0;
                let mut beta = 0.0;
                let mut gamma = ZERO;
                for k in 0..rows {
                    let x = a[(k, p)];
                    let y = a[(k, q)];
                    alpha += x.norm_sqr();
                    beta += y.norm_sqr();
                    gamma += x.conj() * y;
                }
                let g = gamma.norm();
                if g == 0.0 || alpha <= floor || beta <= floor || g <= tol * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let phase = gamma / g;
                let theta = (beta - alpha) / (2.0 * g);
                let t = if theta == 0.0 {
                    1.0
                } else {
                    theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                let jqp = -phase.conj() * s;
                let jqq = phase.conj() * c;
                for k in 0..rows {
                    let x = a[(k, p)];
                    let y = a[(k, q)];
                    a[(k, p)] = x * c + y * jqp;
                    a[(k, q)] = x * s + y * jqq;
                }
            }
        }
        if !rotated {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::NoConvergence("one-sided Jacobi"));
    }

    let mut values: Vec<f64> = (0..cols)
        .map(|j| (0..rows).map(|k| a[(k, j)].norm_sqr()).sum::<f64>().sqrt())
        .collect();
    values.sort_by(|x, y| y.total_cmp(x));
    Ok(values)
}

/// Sum of singular values.
pub fn trace_norm(m: &ComplexMatrix) -> Result<f64> {
    m.check_square()?;
    Ok(singular_values(m)?.iter().sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_hermitian(n: usize, rng: &mut ChaCha8Rng) -> HermitianMatrix {
        let g = ComplexMatrix::from_fn(n, n, |_, _| {
            C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
        });
        HermitianMatrix::new(g.hermitian_part()).unwrap()
    }

    #[test]
    fn identity_eigenvalues() {
        let m = HermitianMatrix::new(ComplexMatrix::identity(3)).unwrap();
        assert_eq!(hermitian_eigenvalues(&m), vec![1.0, 1.0, 1.0]);
    }

    #[test]
    fn diagonal_is_sorted() {
        let m = HermitianMatrix::new(ComplexMatrix::from_real_diagonal(&[2.0, -1.0])).unwrap();
        assert_eq!(hermitian_eigenvalues(&m), vec![-1.0, 2.0]);
    }

    #[test]
    fn pauli_y_eigenvalues() {
        let mut m = ComplexMatrix::zeros(2, 2);
        m[(0, 1)] = C64::new(0.0, -1.0);
        m[(1, 0)] = C64::new(0.0, 1.0);
        let e = hermitian_eigen(&HermitianMatrix::new(m.clone()).unwrap());
        assert!((e.values[0] + 1.0).abs() < 1e-15);
        assert!((e.values[1] - 1.0).abs() < 1e-15);
        assert!(e.reconstruction_residual(&m) < 1e-15);
    }

    #[test]
    fn random_hermitian_trace_and_reconstruction() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in [2, 5, 9, 27, 81] {
            let m = random_hermitian(n, &mut rng);
            let e = hermitian_eigen(&m);
            let sum: f64 = e.values.iter().sum();
            assert!((sum - m.matrix().trace().re).abs() < 1e-10, "n = {n}");
            assert!(e.reconstruction_residual(m.matrix()) < 1e-9, "n = {n}");
            assert!(e.values.windows(2).all(|w| w[0] <= w[1]));
            let gram = &e.vectors.adjoint() * &e.vectors;
            assert!(gram.approx_eq(&ComplexMatrix::identity(n), 1e-12));
        }
    }

    #[test]
    fn singular_values_of_diagonal() {
        let m = ComplexMatrix::from_real_diagonal(&[-2.0]);
        assert_eq!(trace_norm(&m).unwrap(), 2.0);
        assert_eq!(trace_norm(&ComplexMatrix::identity(9)).unwrap(), 9.0);
    }

    #[test]
    fn singular_values_match_hermitian_moduli() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let m = random_hermitian(9, &mut rng);
        let mut expected: Vec<f64> = hermitian_eigenvalues(&m).iter().map(|x| x.abs()).collect();
        expected.sort_by(|a, b| b.total_cmp(a));
        let sv = singular_values(m.matrix()).unwrap();
        for (a, b) in sv.iter().zip(&expected) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn non_finite_is_rejected() {
        let mut m = ComplexMatrix::identity(2);
        m[(0, 0)] = C64::new(f64::INFINITY, 0.0);
        assert_eq!(trace_norm(&m), Err(Error::NonFinite));
    }
}
