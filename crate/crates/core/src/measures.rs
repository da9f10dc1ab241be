//! Entanglement and mixedness diagnostics for two-qutrit states.

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigenvalues, trace_norm, ComplexMatrix, HermitianMatrix};
use crate::states::{DensityMatrix, DIM};

/// Default tolerance on the smallest partial-transpose eigenvalue for a
/// state to count as PPT.
pub const PPT_TOL: f64 = 1e-10;

const LOCAL: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Subsystem {
    A,
    B,
}

/// Partial transpose of a 9×9 operator on `C³ ⊗ C³`.
///
/// Writing entries as `((j,k),(l,m))` with `j, l` on atom A and `k, m` on
/// atom B, transposing B maps `((j,k),(l,m)) ↦ ((j,m),(l,k))` and
/// transposing A maps it to `((l,k),(j,m))`.
pub fn partial_transpose_matrix(m: &ComplexMatrix, subsystem: Subsystem) -> ComplexMatrix {
    assert!(
        m.rows() == DIM && m.cols() == DIM,
        "partial transpose needs a 9x9 matrix"
    );
    let mut out = ComplexMatrix::zeros(DIM, DIM);
    for j in 0..LOCAL {
        for k in 0..LOCAL {
            for l in 0..LOCAL {
                for mm in 0..LOCAL {
                    let value = m[(LOCAL * j + k, LOCAL * l + mm)];
                    let (row, col) = match subsystem {
                        Subsystem::B => (LOCAL * j + mm, LOCAL * l + k),
                        Subsystem::A => (LOCAL * l + k, LOCAL * j + mm),
                    };
                    out[(row, col)] = value;
                }
            }
        }
    }
    out
}

pub fn partial_transpose(rho: &DensityMatrix, subsystem: Subsystem) -> HermitianMatrix {
    HermitianMatrix::new(partial_transpose_matrix(rho.matrix(), subsystem))
        .expect("partial transpose preserves Hermiticity")
}

/// Ascending eigenvalues of `ρ^{T_B}`.
pub fn partial_transpose_spectrum(rho: &DensityMatrix) -> Vec<f64> {
    hermitian_eigenvalues(&partial_transpose(rho, Subsystem::B))
}

pub fn min_pt_eigenvalue(rho: &DensityMatrix) -> f64 {
    partial_transpose_spectrum(rho)[0]
}

/// Negativity as `|Σ negative eigenvalues of ρ^{T_B}|`.
pub fn negativity(rho: &DensityMatrix) -> f64 {
    negative_part(&partial_transpose_spectrum(rho))
}

fn negative_part(spectrum: &[f64]) -> f64 {
    -spectrum.iter().filter(|&&x| x < 0.0).sum::<f64>()
}

/// Negativity as `(‖ρ^{T_B}‖₁ − 1)/2`.
pub fn negativity_trace_norm(rho: &DensityMatrix) -> f64 {
    let pt = partial_transpose_matrix(rho.matrix(), Subsystem::B);
    (trace_norm(&pt).expect("finite state") - 1.0) / 2.0
}

/// Realigned matrix `R(ρ)` with entry `((j,l),(k,m)) = ρ_{(j,k),(l,m)}`:
/// rows indexed by atom A's (row, column) pair, columns by atom B's.
pub fn realign_matrix(m: &ComplexMatrix) -> ComplexMatrix {
    assert!(
        m.rows() == DIM && m.cols() == DIM,
        "realignment needs a 9x9 matrix"
    );
    let mut out = ComplexMatrix::zeros(DIM, DIM);
    for j in 0..LOCAL {
        for k in 0..LOCAL {
            for l in 0..LOCAL {
                for mm in 0..LOCAL {
                    out[(LOCAL * j + l, LOCAL * k + mm)] = m[(LOCAL * j + k, LOCAL * l + mm)];
                }
            }
        }
    }
    out
}

pub fn realign(rho: &DensityMatrix) -> ComplexMatrix {
    realign_matrix(rho.matrix())
}

/// `‖R(ρ)‖₁ − 1`; positive values certify entanglement.
pub fn realignment_negativity(rho: &DensityMatrix) -> f64 {
    trace_norm(&realign(rho)).expect("finite state") - 1.0
}

/// `(9/8)·tr(ρ − ρ²)`, normalized so the maximally mixed state gives 1.
pub fn linear_entropy(rho: &DensityMatrix) -> f64 {
    let trace = rho.matrix().trace().re;
    9.0 / 8.0 * (trace - rho.purity())
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MeasureReport {
    pub negativity: f64,
    pub realignment_negativity: f64,
    pub linear_entropy: f64,
    pub ppt: bool,
    pub min_pt_eigenvalue: f64,
}

/// All diagnostics for one state. A state is PPT when its smallest
/// partial-transpose eigenvalue is at least `-tol`; its negativity is then
/// reported as 0.
pub fn measure_report(rho: &DensityMatrix, tol: f64) -> Result<MeasureReport> {
    if !(tol.is_finite() && tol > 0.0) {
        return Err(Error::OutOfRange {
            name: "tol",
            value: tol,
            domain: "(0, ∞)",
        });
    }
    let spectrum = partial_transpose_spectrum(rho);
    let min_pt_eigenvalue = spectrum[0];
    let ppt = min_pt_eigenvalue >= -tol;
    Ok(MeasureReport {
        negativity: if ppt { 0.0 } else { negative_part(&spectrum) },
        realignment_negativity: realignment_negativity(rho),
        linear_entropy: linear_entropy(rho),
        ppt,
        min_pt_eigenvalue,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::{
        bound_entangled_state, dicke_state, maximally_mixed, product_state, Level, Symmetry,
    };
    use Level::*;

    fn a13() -> DensityMatrix {
        dicke_state(Symmetry::Antisymmetric, One, Three)
            .unwrap()
            .projector()
    }

    #[test]
    fn partial_transpose_of_diagonal_is_identity_map() {
        let rho =
            DensityMatrix::from_diagonal(&[0.1, 0.2, 0.0, 0.05, 0.15, 0.1, 0.1, 0.2, 0.1]).unwrap();
        assert_eq!(partial_transpose(&rho, Subsystem::B).matrix(), rho.matrix());
        assert_eq!(partial_transpose(&rho, Subsystem::A).matrix(), rho.matrix());
    }

    #[test]
    fn partial_transpose_is_involution() {
        let rho = bound_entangled_state(0.3).unwrap();
        for sub in [Subsystem::A, Subsystem::B] {
            let twice = partial_transpose_matrix(&partial_transpose_matrix(rho.matrix(), sub), sub);
            assert_eq!(&twice, rho.matrix());
        }
    }

    #[test]
    fn dark_state_partial_transpose_spectrum() {
        let spectrum = partial_transpose_spectrum(&a13());
        let expected = [-0.5, 0.0, 0.0, 0.0, 0.0, 0.0, 0.5, 0.5, 0.5];
        for (a, b) in spectrum.iter().zip(expected) {
            assert!((a - b).abs() < 1e-12, "{spectrum:?}");
        }
        assert!((negativity(&a13()) - 0.5).abs() < 1e-12);
    }

    #[test]
    fn realignment_of_simple_states() {
        // I/9 = (I/3)⊗(I/3) realigns to vec(I/3)vec(I/3)ᵀ, trace norm ‖I/3‖²_F
        let mm = realign(&maximally_mixed());
        assert!((trace_norm(&mm).unwrap() - 1.0 / 3.0).abs() < 1e-12);
        assert!((realignment_negativity(&maximally_mixed()) + 2.0 / 3.0).abs() < 1e-12);
        assert!(realignment_negativity(&product_state(One, Three)).abs() < 1e-12);
        assert!((realignment_negativity(&a13()) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn linear_entropy_extremes() {
        assert!(linear_entropy(&product_state(Two, Three)).abs() < 1e-15);
        assert!((linear_entropy(&maximally_mixed()) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn reports() {
        let r = measure_report(&bound_entangled_state(0.5).unwrap(), PPT_TOL).unwrap();
        assert!(r.ppt);
        assert_eq!(r.negativity, 0.0);
        assert!(r.realignment_negativity > 0.0);

        let r = measure_report(&a13(), PPT_TOL).unwrap();
        assert!(!r.ppt);
        assert!((r.negativity - 0.5).abs() < 1e-12);

        let r = measure_report(&product_state(Three, Three), PPT_TOL).unwrap();
        assert!(r.ppt);
        assert_eq!(r.negativity, 0.0);
        assert!(r.linear_entropy.abs() < 1e-15);

        assert!(measure_report(&maximally_mixed(), 0.0).is_err());
    }
}
