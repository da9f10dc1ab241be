//! Master-equation dynamics of two V-type atoms coupled through a common
//! vacuum.
//!
//! The generator is `L = L^A + L^B + L^AB`: independent spontaneous decay of
//! each atom from levels 1 and 2 to the ground level 3, collective damping
//! `Γ_j3`, and the dipole-dipole exchange `Ω_j3`. Operators on `C⁹` act on
//! the lexicographic basis of [`crate::states`].
//!
//! Superoperators act on density matrices vectorized row-major:
//! `vec(ρ)[9i + j] = ρ_ij`, so that `vec(AρB) = (A ⊗ Bᵀ) vec(ρ)`.

use crate::error::{Error, Result};
use crate::linalg::{eigenvalues, ComplexMatrix, C64, ZERO};
use crate::states::{DensityMatrix, Level, DIM};

/// Dimension of the vectorized state space.
pub const SUPER_DIM: usize = DIM * DIM;

/// Kernel and purely-imaginary thresholds for Liouvillian eigenvalues.
pub const SPECTRAL_TOL: f64 = 1e-9;

/// Most negative eigenvalue tolerated during integration.
pub const STEP_POSITIVITY_TOL: f64 = 1e-6;

pub const DEFAULT_T_FINAL: f64 = 40.0;
pub const DEFAULT_DT: f64 = 1e-3;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Atom {
    A,
    B,
}

/// Rates of the master equation, all in the same inverse-time unit.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SystemParams {
    /// Single-atom decay rate `γ` of both excited levels.
    pub gamma: f64,
    /// Collective damping `Γ13`.
    pub gamma_coll_13: f64,
    /// Collective damping `Γ23`.
    pub gamma_coll_23: f64,
    /// Dipole-dipole shift `Ω13`.
    pub omega_13: f64,
    /// Dipole-dipole shift `Ω23`.
    pub omega_23: f64,
}

impl SystemParams {
    /// `0 ≤ Γ_j3 ≤ γ` keeps the generator completely positive.
    pub fn new(
        gamma: f64,
        gamma_coll_13: f64,
        gamma_coll_23: f64,
        omega_13: f64,
        omega_23: f64,
    ) -> Result<Self> {
        if !(gamma.is_finite() && gamma > 0.0) {
            return Err(Error::OutOfRange {
                name: "gamma",
                value: gamma,
                domain: "(0, ∞)",
            });
        }
        for (name, value) in [
            ("gamma_coll_13", gamma_coll_13),
            ("gamma_coll_23", gamma_coll_23),
        ] {
            if !(value.is_finite() && (0.0..=gamma).contains(&value)) {
                return Err(Error::OutOfRange {
                    name,
                    value,
                    domain: "[0, gamma]",
                });
            }
        }
        for (name, value) in [("omega_13", omega_13), ("omega_23", omega_23)] {
            if !value.is_finite() {
                return Err(Error::OutOfRange {
                    name,
                    value,
                    domain: "finite reals",
                });
            }
        }
        Ok(Self {
            gamma,
            gamma_coll_13,
            gamma_coll_23,
            omega_13,
            omega_23,
        })
    }

    /// Closely spaced atoms: `Γ13 = Γ23 = γ`, `Ω13 = Ω23 = Ω`.
    pub fn small_separation(gamma: f64, omega: f64) -> Result<Self> {
        Self::new(gamma, gamma, gamma, omega, omega)
    }

    /// Widely spaced atoms: no collective coupling.
    pub fn large_separation(gamma: f64) -> Result<Self> {
        Self::new(gamma, 0.0, 0.0, 0.0, 0.0)
    }

    /// Couplings from geometry factors: `Γ_j3 = γ G_j3(R)`, `Ω_j3 = γ F_j3(R)`.
    pub fn from_geometry(gamma: f64, g13: f64, g23: f64, f13: f64, f23: f64) -> Result<Self> {
        Self::new(gamma, gamma * g13, gamma * g23, gamma * f13, gamma * f23)
    }
}

/// `σ_jk^μ = |j⟩⟨k|` on atom `μ`, identity on the other atom.
pub fn transition_operator(atom: Atom, j: Level, k: Level) -> Result<ComplexMatrix> {
    if j == k {
        return Err(Error::InvalidLevelPair(j.number(), k.number()));
    }
    Ok(matrix_unit(atom, j, k))
}

fn matrix_unit(atom: Atom, j: Level, k: Level) -> ComplexMatrix {
    let mut single = ComplexMatrix::zeros(3, 3);
    single[(j as usize - 1, k as usize - 1)] = C64::new(1.0, 0.0);
    let id = ComplexMatrix::identity(3);
    match atom {
        Atom::A => single.kron(&id),
        Atom::B => id.kron(&single),
    }
}

/// One term `coef · left · ρ · right` of the generator.
struct Term {
    coef: C64,
    left: ComplexMatrix,
    right: ComplexMatrix,
}

/// Expands the generator into sandwich terms `c·AρB`.
///
/// For a decay pair `(a, b)` with rate `r` this emits
/// `r(2aρb† − b†aρ − ρb†a)`; the Hamiltonian part emits `iΩ(Xρ − ρX)`.
fn generator_terms(params: &SystemParams) -> Vec<Term> {
    use Level::*;
    let id = ComplexMatrix::identity(DIM);
    let mut terms = Vec::new();
    let decay_pair = |rate: f64, a: &ComplexMatrix, b: &ComplexMatrix, terms: &mut Vec<Term>| {
        if rate == 0.0 {
            return;
        }
        let b_dag = b.adjoint();
        let b_dag_a = &b_dag * a;
        terms.push(Term {
            coef: C64::new(2.0 * rate, 0.0),
            left: a.clone(),
            right: b_dag,
        });
        terms.push(Term {
            coef: C64::new(-rate, 0.0),
            left: b_dag_a.clone(),
            right: id.clone(),
        });
        terms.push(Term {
            coef: C64::new(-rate, 0.0),
            left: id.clone(),
            right: b_dag_a,
        });
    };

    let channels = [
        (One, params.gamma_coll_13, params.omega_13),
        (Two, params.gamma_coll_23, params.omega_23),
    ];
    for (excited, collective, omega) in channels {
        let lower_a = matrix_unit(Atom::A, Three, excited);
        let lower_b = matrix_unit(Atom::B, Three, excited);
        decay_pair(params.gamma, &lower_a, &lower_a, &mut terms);
        decay_pair(params.gamma, &lower_b, &lower_b, &mut terms);
        decay_pair(collective, &lower_a, &lower_b, &mut terms);
        decay_pair(collective, &lower_b, &lower_a, &mut terms);
        if omega != 0.0 {
            let exchange = &(&lower_a.adjoint() * &lower_b) + &(&lower_b.adjoint() * &lower_a);
            terms.push(Term {
                coef: C64::new(0.0, omega),
                left: exchange.clone(),
                right: id.clone(),
            });
            terms.push(Term {
                coef: C64::new(0.0, -omega),
                left: id.clone(),
                right: exchange,
            });
        }
    }
    terms
}

fn check_nine(rho: &ComplexMatrix) -> Result<()> {
    if rho.rows() != DIM || rho.cols() != DIM {
        return Err(Error::DimensionMismatch {
            expected: "9x9".into(),
            found: format!("{}x{}", rho.rows(), rho.cols()),
        });
    }
    Ok(())
}

/// `(L^A + L^B + L^AB) ρ`, written out term by term with explicit operator
/// products. Accepts any 9×9 matrix since the generator is linear.
pub fn lindblad_rhs(rho: &ComplexMatrix, params: &SystemParams) -> Result<ComplexMatrix> {
    use Level::*;
    check_nine(rho)?;
    let mut out = ComplexMatrix::zeros(DIM, DIM);
    let mut accumulate = |m: ComplexMatrix, coef: C64| {
        for (o, x) in out.as_mut_slice().iter_mut().zip(m.as_slice()) {
            *o += coef * x;
        }
    };
    // r (2 a ρ b† − b† a ρ − ρ b† a)
    let dissipator = |a: &ComplexMatrix, b: &ComplexMatrix| {
        let b_dag = b.adjoint();
        let b_dag_a = &b_dag * a;
        let jump = &(&(a * rho) * &b_dag).scale_real(2.0) - &(&b_dag_a * rho);
        &jump - &(rho * &b_dag_a)
    };

    let channels = [
        (One, params.gamma_coll_13, params.omega_13),
        (Two, params.gamma_coll_23, params.omega_23),
    ];
    for (excited, collective, omega) in channels {
        let sigma_a = transition_operator(Atom::A, Three, excited)?;
        let sigma_b = transition_operator(Atom::B, Three, excited)?;
        let gamma = C64::new(params.gamma, 0.0);
        accumulate(dissipator(&sigma_a, &sigma_a), gamma);
        accumulate(dissipator(&sigma_b, &sigma_b), gamma);
        let coll = C64::new(collective, 0.0);
        accumulate(dissipator(&sigma_a, &sigma_b), coll);
        accumulate(dissipator(&sigma_b, &sigma_a), coll);
        let exchange = &(&transition_operator(Atom::A, excited, Three)? * &sigma_b)
            + &(&transition_operator(Atom::B, excited, Three)? * &sigma_a);
        accumulate(exchange.commutator(rho), C64::new(0.0, omega));
    }
    Ok(out)
}

/// Compressed sparse rows.
#[derive(Clone, Debug)]
struct SparseMatrix {
    row_ptr: Vec<usize>,
    cols: Vec<usize>,
    vals: Vec<C64>,
}

impl SparseMatrix {
    fn from_dense(m: &ComplexMatrix) -> Self {
        let mut row_ptr = vec![0];
        let mut cols = Vec::new();
        let mut vals = Vec::new();
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                let v = m[(i, j)];
                if v != ZERO {
                    cols.push(j);
                    vals.push(v);
                }
            }
            row_ptr.push(cols.len());
        }
        Self {
            row_ptr,
            cols,
            vals,
        }
    }

    fn mul_into(&self, x: &[C64], out: &mut [C64]) {
        for (i, o) in out.iter_mut().enumerate() {
            let mut acc = ZERO;
            for p in self.row_ptr[i]..self.row_ptr[i + 1] {
                acc += self.vals[p] * x[self.cols[p]];
            }
            *o = acc;
        }
    }
}

/// The 81×81 Liouvillian acting on row-major vectorized density matrices.
#[derive(Clone, Debug)]
pub struct Superoperator {
    dense: ComplexMatrix,
    sparse: SparseMatrix,
}

impl Superoperator {
    pub fn matrix(&self) -> &ComplexMatrix {
        &self.dense
    }

    pub fn nonzeros(&self) -> usize {
        self.sparse.vals.len()
    }

    /// Applies the superoperator to a 9×9 matrix.
    pub fn apply(&self, rho: &ComplexMatrix) -> Result<ComplexMatrix> {
        check_nine(rho)?;
        let mut out = vec![ZERO; SUPER_DIM];
        self.sparse.mul_into(rho.as_slice(), &mut out);
        Ok(ComplexMatrix::from_vec(DIM, DIM, out))
    }
}

pub fn vectorize(rho: &ComplexMatrix) -> Vec<C64> {
    rho.as_slice().to_vec()
}

pub fn unvectorize(v: &[C64]) -> ComplexMatrix {
    ComplexMatrix::from_vec(DIM, DIM, v.to_vec())
}

/// Assembles the Liouvillian from Kronecker products `A ⊗ Bᵀ`, one per
/// sandwich term of the generator.
pub fn build_liouvillian(params: &SystemParams) -> Superoperator {
    let mut dense = ComplexMatrix::zeros(SUPER_DIM, SUPER_DIM);
    for term in generator_terms(params) {
        let k = term.left.kron(&term.right.transpose());
        for (d, x) in dense.as_mut_slice().iter_mut().zip(k.as_slice()) {
            *d += term.coef * x;
        }
    }
    let sparse = SparseMatrix::from_dense(&dense);
    Superoperator { dense, sparse }
}

/// Result of integrating the master equation.
#[derive(Clone, Debug)]
pub struct Evolution {
    pub state: DensityMatrix,
    pub steps: usize,
    pub step_size: f64,
    /// Sum over steps of `|tr ρ − 1|` removed by renormalization.
    pub cumulative_trace_correction: f64,
    /// Largest Hermitian defect removed by re-symmetrization in one step.
    pub max_hermitian_correction: f64,
}

/// Fixed-step RK4 integrator bound to one Liouvillian.
#[derive(Clone, Debug)]
pub struct Integrator {
    liouvillian: Superoperator,
}

impl Integrator {
    pub fn new(params: &SystemParams) -> Self {
        Self {
            liouvillian: build_liouvillian(params),
        }
    }

    pub fn liouvillian(&self) -> &Superoperator {
        &self.liouvillian
    }

    pub fn evolve(&self, rho0: &DensityMatrix, t_final: f64, dt: f64) -> Result<Evolution> {
        self.evolve_observed(rho0, t_final, dt, |_, _| {})
    }

    /// Integrates to `t_final` with `⌈t_final/dt⌉` equal steps, calling
    /// `observe(t, ρ)` after every step.
    ///
    /// Each step is re-symmetrized to `(ρ + ρ†)/2` and rescaled to unit
    /// trace. A step whose state has an eigenvalue below `-1e-6` aborts
    /// with [`Error::IntegrationUnstable`].
    pub fn evolve_observed(
        &self,
        rho0: &DensityMatrix,
        t_final: f64,
        dt: f64,
        mut observe: impl FnMut(f64, &ComplexMatrix),
    ) -> Result<Evolution> {
        if !(t_final.is_finite() && t_final >= 0.0) {
            return Err(Error::OutOfRange {
                name: "t_final",
                value: t_final,
                domain: "[0, ∞)",
            });
        }
        if t_final == 0.0 {
            return Ok(Evolution {
                state: rho0.clone(),
                steps: 0,
                step_size: 0.0,
                cumulative_trace_correction: 0.0,
                max_hermitian_correction: 0.0,
            });
        }
        if !(dt.is_finite() && dt > 0.0 && dt <= t_final) {
            return Err(Error::OutOfRange {
                name: "dt",
                value: dt,
                domain: "(0, t_final]",
            });
        }
        let steps = ((t_final / dt) - 1e-9).ceil().max(1.0) as usize;
        let h = t_final / steps as f64;

        let l = &self.liouvillian.sparse;
        let mut y = vectorize(rho0.matrix());
        let mut k1 = vec![ZERO; SUPER_DIM];
        let mut k2 = vec![ZERO; SUPER_DIM];
        let mut k3 = vec![ZERO; SUPER_DIM];
        let mut k4 = vec![ZERO; SUPER_DIM];
        let mut tmp = vec![ZERO; SUPER_DIM];
        let mut trace_correction = 0.0;
        let mut max_hermitian = 0.0f64;

        for step in 1..=steps {
            l.mul_into(&y, &mut k1);
            axpy_into(&y, 0.5 * h, &k1, &mut tmp);
            l.mul_into(&tmp, &mut k2);
            axpy_into(&y, 0.5 * h, &k2, &mut tmp);
            l.mul_into(&tmp, &mut k3);
            axpy_into(&y, h, &k3, &mut tmp);
            l.mul_into(&tmp, &mut k4);
            for i in 0..SUPER_DIM {
                y[i] += (k1[i] + (k2[i] + k3[i]) * 2.0 + k4[i]) * (h / 6.0);
            }

            max_hermitian = max_hermitian.max(symmetrize(&mut y));
            let trace: f64 = (0..DIM).map(|i| y[i * DIM + i].re).sum();
            trace_correction += (trace - 1.0).abs();
            for z in y.iter_mut() {
                *z /= trace;
            }

            let t = step as f64 * h;
            if !is_positive_within(&y, STEP_POSITIVITY_TOL) {
                let m = unvectorize(&y);
                let min = crate::linalg::HermitianMatrix::new(m)
                    .map(|hm| hm.eigenvalues()[0])
                    .unwrap_or(f64::NAN);
                return Err(Error::IntegrationUnstable {
                    time: t,
                    min_eigenvalue: min,
                });
            }
            observe(t, &unvectorize(&y));
        }

        let state = match DensityMatrix::new(unvectorize(&y)) {
            Ok(s) => s,
            Err(Error::NegativeEigenvalue { value }) => {
                return Err(Error::IntegrationUnstable {
                    time: t_final,
                    min_eigenvalue: value,
                })
            }
            Err(e) => return Err(e),
        };
        Ok(Evolution {
            state,
            steps,
            step_size: h,
            cumulative_trace_correction: trace_correction,
            max_hermitian_correction: max_hermitian,
        })
    }
}

fn axpy_into(y: &[C64], a: f64, x: &[C64], out: &mut [C64]) {
    for ((o, yi), xi) in out.iter_mut().zip(y).zip(x) {
        *o = yi + xi * a;
    }
}

/// Replaces `ρ` by `(ρ + ρ†)/2`; returns the defect removed.
fn symmetrize(y: &mut [C64]) -> f64 {
    let mut defect = 0.0f64;
    for i in 0..DIM {
        y[i * DIM + i].im = 0.0;
        for j in i + 1..DIM {
            let a = y[i * DIM + j];
            let b = y[j * DIM + i];
            defect = defect.max((a - b.conj()).norm());
            let avg = (a + b.conj()) * 0.5;
            y[i * DIM + j] = avg;
            y[j * DIM + i] = avg.conj();
        }
    }
    defect
}

/// Cholesky test of `ρ + tol·𝟙 ≻ 0`.
fn is_positive_within(y: &[C64], tol: f64) -> bool {
    let mut l = [ZERO; SUPER_DIM];
    for j in 0..DIM {
        let mut d = y[j * DIM + j].re + tol;
        for k in 0..j {
            d -= l[j * DIM + k].norm_sqr();
        }
        if !d.is_finite() || d <= 0.0 {
            return false;
        }
        let d = d.sqrt();
        l[j * DIM + j] = C64::new(d, 0.0);
        for i in j + 1..DIM {
            let mut s = y[i * DIM + j];
            for k in 0..j {
                s -= l[i * DIM + k] * l[j * DIM + k].conj();
            }
            l[i * DIM + j] = s / d;
        }
    }
    true
}

/// Convenience wrapper around [`Integrator::evolve`].
pub fn evolve(
    rho0: &DensityMatrix,
    t_final: f64,
    dt: f64,
    params: &SystemParams,
) -> Result<Evolution> {
    Integrator::new(params).evolve(rho0, t_final, dt)
}

/// Spectral summary of a Liouvillian.
#[derive(Clone, Debug)]
pub struct StationaryAnalysis {
    /// All 81 eigenvalues, sorted by decreasing real part then imaginary part.
    pub eigenvalues: Vec<C64>,
    /// Number of eigenvalues with `|λ| < 1e-9`.
    pub kernel_dimension: usize,
    /// Largest real part over the spectrum.
    pub spectral_abscissa: f64,
    /// Eigenvalues with `|Re λ| < 1e-9` and `|Im λ| ≥ 1e-9`.
    pub purely_imaginary: Vec<C64>,
    /// Slowest decay rate among the remaining eigenvalues.
    pub relaxation_gap: Option<f64>,
}

pub fn stationary_analysis(params: &SystemParams) -> Result<StationaryAnalysis> {
    spectrum_of(&build_liouvillian(params))
}

pub fn spectrum_of(l: &Superoperator) -> Result<StationaryAnalysis> {
    let mut ev = eigenvalues(l.matrix())?;
    ev.sort_by(|a, b| b.re.total_cmp(&a.re).then(a.im.total_cmp(&b.im)));
    let kernel_dimension = ev.iter().filter(|z| z.norm() < SPECTRAL_TOL).count();
    let purely_imaginary: Vec<C64> = ev
        .iter()
        .copied()
        .filter(|z| z.re.abs() < SPECTRAL_TOL && z.im.abs() >= SPECTRAL_TOL)
        .collect();
    let spectral_abscissa = ev.iter().map(|z| z.re).fold(f64::NEG_INFINITY, f64::max);
    let relaxation_gap = ev
        .iter()
        .filter(|z| z.re.abs() >= SPECTRAL_TOL)
        .map(|z| -z.re)
        .fold(None, |acc: Option<f64>, r| {
            Some(acc.map_or(r, |a| a.min(r)))
        });
    Ok(StationaryAnalysis {
        eigenvalues: ev,
        kernel_dimension,
        spectral_abscissa,
        purely_imaginary,
        relaxation_gap,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::{dicke_state, product_state, StateVector, Symmetry};
    use Level::*;

    fn ket(a: Level, b: Level) -> Vec<C64> {
        StateVector::basis(crate::states::BasisIndex::new(a, b))
            .amplitudes()
            .to_vec()
    }

    #[test]
    fn transition_operator_action() {
        let s = transition_operator(Atom::A, Three, One).unwrap();
        assert_eq!(s.mat_vec(&ket(One, Three)), ket(Three, Three));
        let s = transition_operator(Atom::B, Three, One).unwrap();
        assert!(s.mat_vec(&ket(One, Three)).iter().all(|z| *z == ZERO));
        assert!(transition_operator(Atom::A, Two, Two).is_err());
    }

    #[test]
    fn collective_lowering_annihilates_dark_state() {
        let a13 = dicke_state(Symmetry::Antisymmetric, One, Three).unwrap();
        let j = &transition_operator(Atom::A, Three, One).unwrap()
            + &transition_operator(Atom::B, Three, One).unwrap();
        assert!(j.mat_vec(a13.amplitudes()).iter().all(|z| z.norm() < 1e-16));
    }

    #[test]
    fn ground_state_is_stationary() {
        let params = SystemParams::small_separation(1.0, 3.0).unwrap();
        let rhs = lindblad_rhs(product_state(Three, Three).matrix(), &params).unwrap();
        assert_eq!(rhs.max_abs(), 0.0);
    }

    #[test]
    fn dark_state_is_stationary_with_exchange() {
        let params = SystemParams::small_separation(1.0, 2.5).unwrap();
        let rho = dicke_state(Symmetry::Antisymmetric, One, Three)
            .unwrap()
            .projector();
        assert!(lindblad_rhs(rho.matrix(), &params).unwrap().max_abs() < 1e-15);
    }

    #[test]
    fn independent_decay_rate() {
        let params = SystemParams::large_separation(1.3).unwrap();
        let rho = product_state(One, Three);
        let rhs = lindblad_rhs(rho.matrix(), &params).unwrap();
        assert!((rhs[(2, 2)].re + 2.0 * 1.3).abs() < 1e-15);
        assert!((rhs[(8, 8)].re - 2.0 * 1.3).abs() < 1e-15);
    }

    #[test]
    fn params_validation() {
        assert!(SystemParams::large_separation(0.0).is_err());
        assert!(SystemParams::new(1.0, 1.5, 0.0, 0.0, 0.0).is_err());
        assert!(SystemParams::new(1.0, 0.5, 0.5, f64::NAN, 0.0).is_err());
        let p = SystemParams::from_geometry(2.0, 1.0, 1.0, 3.0, 3.0).unwrap();
        assert_eq!(p, SystemParams::small_separation(2.0, 6.0).unwrap());
    }

    #[test]
    fn liouvillian_matches_rhs_on_matrix_units() {
        let params = SystemParams::new(1.0, 0.7, 0.4, 1.5, -0.8).unwrap();
        let l = build_liouvillian(&params);
        for i in 0..DIM {
            for j in 0..DIM {
                let mut e = ComplexMatrix::zeros(DIM, DIM);
                e[(i, j)] = C64::new(1.0, 0.0);
                let direct = lindblad_rhs(&e, &params).unwrap();
                assert!(l.apply(&e).unwrap().approx_eq(&direct, 1e-12));
                let dense = unvectorize(&l.matrix().mat_vec(&vectorize(&e)));
                assert!(dense.approx_eq(&direct, 1e-12));
            }
        }
    }

    #[test]
    fn evolve_rejects_bad_times() {
        let rho = product_state(One, One);
        let params = SystemParams::large_separation(1.0).unwrap();
        assert!(evolve(&rho, -1.0, 0.1, &params).is_err());
        assert!(evolve(&rho, 1.0, 0.0, &params).is_err());
        assert!(evolve(&rho, 1.0, 2.0, &params).is_err());
        let same = evolve(&rho, 0.0, 0.1, &params).unwrap();
        assert_eq!(same.state, rho);
        assert_eq!(same.steps, 0);
    }

    #[test]
    fn oversized_step_is_flagged_unstable() {
        // RK4 on rate-2 decay is unstable beyond h ≈ 1.39.
        let params = SystemParams::large_separation(1.0).unwrap();
        let rho = product_state(One, One);
        let err = evolve(&rho, 40.0, 4.0, &params).unwrap_err();
        assert!(matches!(err, Error::IntegrationUnstable { .. }), "{err:?}");
    }

    #[test]
    fn positivity_check() {
        let rho = product_state(One, Two);
        assert!(is_positive_within(rho.matrix().as_slice(), 1e-6));
        let mut bad = rho.matrix().clone();
        bad[(0, 0)] = C64::new(-1e-3, 0.0);
        assert!(!is_positive_within(bad.as_slice(), 1e-6));
    }
}
