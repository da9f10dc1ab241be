//! Dissipative dynamics and entanglement of two V-type three-level atoms
//! sharing a common vacuum.
//!
//! - [`linalg`]: dense complex matrices, Jacobi eigen/singular values,
//!   general eigenvalues, matrix exponential.
//! - [`states`]: the `C³ ⊗ C³` basis, Dicke states, initial-state families,
//!   density-matrix validation and JSON form.
//! - [`dynamics`]: master-equation generator, Liouvillian, RK4 evolution,
//!   spectral analysis.
//! - [`asymptotics`]: closed-form limit states for closely spaced atoms and
//!   the entropy–negativity boundary curves.
//! - [`measures`]: partial transpose, negativity, realignment, linear entropy.
//! - [`experiments`]: deterministic sweeps used by the CLI.

pub mod asymptotics;
pub mod dynamics;
pub mod error;
pub mod experiments;
pub mod linalg;
pub mod measures;
pub mod sampling;
pub mod states;

pub use error::{Error, Result};
pub use linalg::{ComplexMatrix, HermitianMatrix, C64};
pub use states::DensityMatrix;
