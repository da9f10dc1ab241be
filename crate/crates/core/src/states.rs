//! The two-atom Hilbert space `C³ ⊗ C³`.
//!
//! Basis vectors `|j_A⟩ ⊗ |k_B⟩` are ordered lexicographically in `(j, k)`,
//! giving the flat index `3(j − 1) + k` in `1..=9`. Levels 1 and 2 are the
//! excited states of the V configuration and level 3 is the ground state.
//! Every public surface uses the 1-based flat index; storage is 0-based.

use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigen, trace_norm, ComplexMatrix, HermitianMatrix, C64, ZERO};

pub const DIM: usize = 9;

/// Tolerance for the Hermitian defect and trace of a density matrix.
pub const DENSITY_TOL: f64 = 1e-10;
/// Most negative eigenvalue a density matrix may have.
pub const POSITIVITY_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Level {
    One = 1,
    Two = 2,
    Three = 3,
}

impl Level {
    pub const ALL: [Level; 3] = [Level::One, Level::Two, Level::Three];

    pub fn new(n: u8) -> Result<Self> {
        match n {
            1 => Ok(Level::One),
            2 => Ok(Level::Two),
            3 => Ok(Level::Three),
            other => Err(Error::InvalidLevel(other)),
        }
    }

    pub fn number(self) -> u8 {
        self as u8
    }

    pub(crate) fn index(self) -> usize {
        self as usize - 1
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.number())
    }
}

/// A product basis vector `|j_A⟩ ⊗ |k_B⟩`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BasisIndex {
    pub a: Level,
    pub b: Level,
}

impl BasisIndex {
    pub fn new(a: Level, b: Level) -> Self {
        Self { a, b }
    }

    /// 1-based lexicographic index.
    pub fn flat(self) -> usize {
        3 * self.a.index() + self.b.number() as usize
    }

    pub fn from_flat(flat: usize) -> Result<Self> {
        if !(1..=DIM).contains(&flat) {
            return Err(Error::OutOfRange {
                name: "flat index",
                value: flat as f64,
                domain: "1..=9",
            });
        }
        let zero = flat - 1;
        Ok(Self {
            a: Level::new((zero / 3 + 1) as u8)?,
            b: Level::new((zero % 3 + 1) as u8)?,
        })
    }

    pub(crate) fn offset(self) -> usize {
        self.flat() - 1
    }
}

impl fmt::Display for BasisIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "|{}_A {}_B⟩", self.a, self.b)
    }
}

/// A normalized pure state of the two atoms.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector([C64; DIM]);

impl StateVector {
    pub fn new(amplitudes: [C64; DIM]) -> Result<Self> {
        let norm: f64 = amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > 1e-12 {
            return Err(Error::OutOfRange {
                name: "state norm",
                value: norm,
                domain: "1 ± 1e-12",
            });
        }
        Ok(Self(amplitudes))
    }

    pub fn basis(index: BasisIndex) -> Self {
        let mut amps = [ZERO; DIM];
        amps[index.offset()] = C64::new(1.0, 0.0);
        Self(amps)
    }

    pub fn amplitudes(&self) -> &[C64; DIM] {
        &self.0
    }

    /// Amplitude at a 1-based flat index.
    pub fn amplitude(&self, flat: usize) -> C64 {
        assert!((1..=DIM).contains(&flat), "flat index {flat} out of 1..=9");
        self.0[flat - 1]
    }

    pub fn inner(&self, other: &StateVector) -> C64 {
        self.0.iter().zip(&other.0).map(|(a, b)| a.conj() * b).sum()
    }

    pub fn projector(&self) -> DensityMatrix {
        DensityMatrix::from_valid(ComplexMatrix::outer(&self.0, &self.0))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Symmetry {
    Symmetric,
    Antisymmetric,
}

/// Generalized Dicke state `(|k_A l_B⟩ ± |l_A k_B⟩)/√2` for `k < l`.
pub fn dicke_state(kind: Symmetry, k: Level, l: Level) -> Result<StateVector> {
    if k >= l {
        return Err(Error::InvalidLevelPair(k.number(), l.number()));
    }
    let sign = match kind {
        Symmetry::Symmetric => 1.0,
        Symmetry::Antisymmetric => -1.0,
    };
    let mut amps = [ZERO; DIM];
    amps[BasisIndex::new(k, l).offset()] = C64::new(FRAC_1_SQRT_2, 0.0);
    amps[BasisIndex::new(l, k).offset()] = C64::new(sign * FRAC_1_SQRT_2, 0.0);
    Ok(StateVector(amps))
}

/// Collective basis: doubly excited, Dicke, and ground states.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CollectiveState {
    E1,
    E2,
    S12,
    A12,
    S13,
    A13,
    S23,
    A23,
    G,
}

impl CollectiveState {
    pub const ALL: [CollectiveState; DIM] = [
        CollectiveState::E1,
        CollectiveState::E2,
        CollectiveState::S12,
        CollectiveState::A12,
        CollectiveState::S13,
        CollectiveState::A13,
        CollectiveState::S23,
        CollectiveState::A23,
        CollectiveState::G,
    ];

    pub fn label(self) -> &'static str {
        match self {
            CollectiveState::E1 => "e1",
            CollectiveState::E2 => "e2",
            CollectiveState::S12 => "s12",
            CollectiveState::A12 => "a12",
            CollectiveState::S13 => "s13",
            CollectiveState::A13 => "a13",
            CollectiveState::S23 => "s23",
            CollectiveState::A23 => "a23",
            CollectiveState::G => "g",
        }
    }

    pub fn vector(self) -> StateVector {
        use Level::*;
        let dicke = |kind, k, l| dicke_state(kind, k, l).expect("k < l");
        match self {
            CollectiveState::E1 => StateVector::basis(BasisIndex::new(One, One)),
            CollectiveState::E2 => StateVector::basis(BasisIndex::new(Two, Two)),
            CollectiveState::G => StateVector::basis(BasisIndex::new(Three, Three)),
            CollectiveState::S12 => dicke(Symmetry::Symmetric, One, Two),
            CollectiveState::A12 => dicke(Symmetry::Antisymmetric, One, Two),
            CollectiveState::S13 => dicke(Symmetry::Symmetric, One, Three),
            CollectiveState::A13 => dicke(Symmetry::Antisymmetric, One, Three),
            CollectiveState::S23 => dicke(Symmetry::Symmetric, Two, Three),
            CollectiveState::A23 => dicke(Symmetry::Antisymmetric, Two, Three),
        }
    }
}

/// Populations `⟨c|ρ|c⟩` in the collective basis, stored in
/// [`CollectiveState::ALL`] order.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CollectivePopulations(pub [f64; DIM]);

impl CollectivePopulations {
    pub fn get(&self, state: CollectiveState) -> f64 {
        let i = CollectiveState::ALL
            .iter()
            .position(|&c| c == state)
            .unwrap();
        self.0[i]
    }

    pub fn iter(&self) -> impl Iterator<Item = (CollectiveState, f64)> + '_ {
        CollectiveState::ALL
            .iter()
            .copied()
            .zip(self.0.iter().copied())
    }
}

pub fn collective_populations(rho: &DensityMatrix) -> CollectivePopulations {
    let mut out = [0.0; DIM];
    for (slot, c) in out.iter_mut().zip(CollectiveState::ALL) {
        *slot = rho.expectation(&c.vector()).re;
    }
    CollectivePopulations(out)
}

/// Unitary whose rows are `⟨c|` for `c` in [`CollectiveState::ALL`] order.
pub fn collective_basis_matrix() -> ComplexMatrix {
    let rows: Vec<StateVector> = CollectiveState::ALL.iter().map(|c| c.vector()).collect();
    ComplexMatrix::from_fn(DIM, DIM, |i, j| rows[i].0[j].conj())
}

/// A validated two-qutrit density matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix(HermitianMatrix);

impl DensityMatrix {
    /// Accepts a 9×9 matrix iff its Hermitian defect and trace defect are at
    /// most `1e-10` and its smallest eigenvalue is at least `-1e-9`.
    pub fn new(m: ComplexMatrix) -> Result<Self> {
        validate_density(m)
    }

    /// Wraps a matrix known to be valid; checked in debug builds.
    pub(crate) fn from_valid(m: ComplexMatrix) -> Self {
        debug_assert!(m.hermitian_defect() <= DENSITY_TOL);
        Self(HermitianMatrix::new(m).expect("valid density matrix"))
    }

    /// Diagonal state from nine populations.
    pub fn from_diagonal(populations: &[f64; DIM]) -> Result<Self> {
        Self::new(ComplexMatrix::from_real_diagonal(populations))
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        self.0.matrix()
    }

    pub fn hermitian(&self) -> &HermitianMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.0.into_matrix()
    }

    /// Matrix element `ρ_lm` with 1-based indices.
    pub fn element(&self, l: usize, m: usize) -> C64 {
        assert!(
            (1..=DIM).contains(&l) && (1..=DIM).contains(&m),
            "element ({l}, {m}) outside 1..=9"
        );
        self.matrix()[(l - 1, m - 1)]
    }

    pub fn population(&self, index: BasisIndex) -> f64 {
        self.element(index.flat(), index.flat()).re
    }

    /// `⟨ψ|ρ|ψ⟩`.
    pub fn expectation(&self, psi: &StateVector) -> C64 {
        let rho_psi = self.matrix().mat_vec(psi.amplitudes());
        psi.amplitudes()
            .iter()
            .zip(&rho_psi)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        self.0.eigenvalues()
    }

    pub fn purity(&self) -> f64 {
        let m = self.matrix();
        m.as_slice().iter().map(|z| z.norm_sqr()).sum()
    }

    /// `½‖ρ − σ‖₁`.
    pub fn trace_distance(&self, other: &DensityMatrix) -> f64 {
        0.5 * trace_norm(&(self.matrix() - other.matrix())).expect("finite density matrices")
    }

    pub fn to_file(&self) -> DensityMatrixFile {
        let m = self.matrix();
        DensityMatrixFile {
            dim: DIM,
            re: (0..DIM)
                .map(|i| (0..DIM).map(|j| m[(i, j)].re).collect())
                .collect(),
            im: (0..DIM)
                .map(|i| (0..DIM).map(|j| m[(i, j)].im).collect())
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: DensityMatrixFile =
            serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
        file.into_density()
    }
}

/// On-disk form of a density matrix: row-major real and imaginary parts.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DensityMatrixFile {
    pub dim: usize,
    pub re: Vec<Vec<f64>>,
    pub im: Vec<Vec<f64>>,
}

impl DensityMatrixFile {
    pub fn into_density(self) -> Result<DensityMatrix> {
        if self.dim != DIM {
            return Err(Error::Format(format!("dim must be 9, found {}", self.dim)));
        }
        let shape_ok =
            |rows: &Vec<Vec<f64>>| rows.len() == DIM && rows.iter().all(|r| r.len() == DIM);
        if !shape_ok(&self.re) || !shape_ok(&self.im) {
            return Err(Error::Format("\"re\" and \"im\" must be 9x9 arrays".into()));
        }
        let m = ComplexMatrix::from_fn(DIM, DIM, |i, j| C64::new(self.re[i][j], self.im[i][j]));
        validate_density(m)
    }
}

/// Checks the density-matrix conditions in order: shape, finiteness,
/// Hermiticity, unit trace, positivity. The first violation is reported.
pub fn validate_density(m: ComplexMatrix) -> Result<DensityMatrix> {
    if m.rows() != DIM || m.cols() != DIM {
        return Err(Error::DimensionMismatch {
            expected: "9x9".into(),
            found: format!("{}x{}", m.rows(), m.cols()),
        });
    }
    m.check_finite()?;
    let defect = m.hermitian_defect();
    if defect > DENSITY_TOL {
        return Err(Error::NotHermitian { defect });
    }
    let h = HermitianMatrix::new(m)?;
    let trace_defect = h.matrix().trace().re - 1.0;
    if trace_defect.abs() > DENSITY_TOL {
        return Err(Error::TraceDefect {
            defect: trace_defect,
        });
    }
    let min = hermitian_eigen(&h).values[0];
    if min < -POSITIVITY_TOL {
        return Err(Error::NegativeEigenvalue { value: min });
    }
    Ok(DensityMatrix(h))
}

/// Pure projector onto `|a_A⟩ ⊗ |b_B⟩`.
pub fn product_state(a: Level, b: Level) -> DensityMatrix {
    StateVector::basis(BasisIndex::new(a, b)).projector()
}

/// Projector onto `cos φ |1_A 2_B⟩ + sin φ |1_A 3_B⟩`, `φ ∈ [0, π/2]`.
pub fn superposition_state(phi: f64) -> Result<DensityMatrix> {
    const SLACK: f64 = 1e-12;
    if !(-SLACK..=std::f64::consts::FRAC_PI_2 + SLACK).contains(&phi) {
        return Err(Error::OutOfRange {
            name: "phi",
            value: phi,
            domain: "[0, π/2]",
        });
    }
    let mut amps = [ZERO; DIM];
    amps[BasisIndex::new(Level::One, Level::Two).offset()] = C64::new(phi.cos(), 0.0);
    amps[BasisIndex::new(Level::One, Level::Three).offset()] = C64::new(phi.sin(), 0.0);
    Ok(StateVector(amps).projector())
}

/// `p·|first⟩⟨first| + (1 − p)·|second⟩⟨second|`.
pub fn mixture_two(first: BasisIndex, second: BasisIndex, p: f64) -> Result<DensityMatrix> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::OutOfRange {
            name: "p",
            value: p,
            domain: "[0, 1]",
        });
    }
    let mut diag = [0.0; DIM];
    diag[first.offset()] += p;
    diag[second.offset()] += 1.0 - p;
    Ok(DensityMatrix::from_valid(
        ComplexMatrix::from_real_diagonal(&diag),
    ))
}

/// The PPT entangled family `ρ_a`, `0 < a < 1`.
pub fn bound_entangled_state(a: f64) -> Result<DensityMatrix> {
    if !(a > 0.0 && a < 1.0) {
        return Err(Error::OutOfRange {
            name: "a",
            value: a,
            domain: "(0, 1)",
        });
    }
    let alpha = (1.0 + a) / 2.0;
    let beta = (1.0 - a * a).sqrt() / 2.0;
    let norm = 1.0 / (8.0 * a + 1.0);
    let mut m = ComplexMatrix::zeros(DIM, DIM);
    let mut set = |l: usize, k: usize, v: f64| m[(l - 1, k - 1)] = C64::new(v * norm, 0.0);
    for l in [1, 5, 9] {
        for k in [1, 5] {
            set(l, k, a);
        }
    }
    set(1, 9, a);
    set(5, 9, a);
    for l in [2, 3, 4, 6, 8] {
        set(l, l, a);
    }
    set(7, 7, alpha);
    set(9, 9, alpha);
    set(7, 9, beta);
    set(9, 7, beta);
    validate_density(m).map_err(|e| Error::Internal(format!("ρ_a construction: {e}")))
}

/// `𝟙/9`.
pub fn maximally_mixed() -> DensityMatrix {
    DensityMatrix::from_valid(ComplexMatrix::from_real_diagonal(&[1.0 / 9.0; DIM]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use Level::*;

    #[test]
    fn flat_index_is_lexicographic_bijection() {
        let mut seen = Vec::new();
        for a in Level::ALL {
            for b in Level::ALL {
                let idx = BasisIndex::new(a, b);
                seen.push(idx.flat());
                assert_eq!(BasisIndex::from_flat(idx.flat()).unwrap(), idx);
            }
        }
        assert_eq!(seen, (1..=9).collect::<Vec<_>>());
        assert!(BasisIndex::from_flat(0).is_err());
        assert!(BasisIndex::from_flat(10).is_err());
    }

    #[test]
    fn levels_out_of_range_are_rejected() {
        assert_eq!(Level::new(0), Err(Error::InvalidLevel(0)));
        assert_eq!(Level::new(4), Err(Error::InvalidLevel(4)));
    }

    #[test]
    fn product_states_have_single_entry() {
        let g = product_state(Three, Three);
        assert_eq!(g.element(9, 9), C64::new(1.0, 0.0));
        assert_eq!(
            g.matrix().as_slice().iter().filter(|z| **z != ZERO).count(),
            1
        );
        assert_eq!(product_state(One, Three).element(3, 3).re, 1.0);
        assert_eq!(product_state(One, Two).element(2, 2).re, 1.0);
    }

    #[test]
    fn dicke_amplitudes() {
        let a13 = dicke_state(Symmetry::Antisymmetric, One, Three).unwrap();
        assert_eq!(a13.amplitude(3).re, FRAC_1_SQRT_2);
        assert_eq!(a13.amplitude(7).re, -FRAC_1_SQRT_2);
        let s23 = dicke_state(Symmetry::Symmetric, Two, Three).unwrap();
        assert_eq!(s23.amplitude(6).re, FRAC_1_SQRT_2);
        assert_eq!(s23.amplitude(8).re, FRAC_1_SQRT_2);
        assert_eq!(
            dicke_state(Symmetry::Symmetric, Three, One),
            Err(Error::InvalidLevelPair(3, 1))
        );
        assert!(dicke_state(Symmetry::Antisymmetric, Two, Two).is_err());
    }

    #[test]
    fn collective_basis_is_orthonormal() {
        let u = collective_basis_matrix();
        assert!((&u * &u.adjoint()).approx_eq(&ComplexMatrix::identity(DIM), 1e-12));
    }

    #[test]
    fn superposition_endpoints() {
        let s0 = superposition_state(0.0).unwrap();
        assert!(s0
            .matrix()
            .approx_eq(product_state(One, Two).matrix(), 1e-15));
        let s1 = superposition_state(std::f64::consts::FRAC_PI_2).unwrap();
        assert!(s1
            .matrix()
            .approx_eq(product_state(One, Three).matrix(), 1e-15));
        let s = superposition_state(std::f64::consts::FRAC_PI_4).unwrap();
        let pops = collective_populations(&s);
        assert!((pops.get(CollectiveState::A13) - 0.25).abs() < 1e-15);
        assert!((pops.get(CollectiveState::A12) - 0.25).abs() < 1e-15);
        assert!(superposition_state(-0.1).is_err());
        assert!(superposition_state(1.6).is_err());
    }

    #[test]
    fn mixture_endpoints() {
        let first = BasisIndex::new(One, Two);
        let second = BasisIndex::new(One, Three);
        let m = mixture_two(first, second, 0.3).unwrap();
        assert!((m.element(2, 2).re - 0.3).abs() < 1e-15);
        assert!((m.element(3, 3).re - 0.7).abs() < 1e-15);
        assert_eq!(
            mixture_two(first, second, 0.0).unwrap(),
            product_state(One, Three)
        );
        assert_eq!(
            mixture_two(first, second, 1.0).unwrap(),
            product_state(One, Two)
        );
        assert!(mixture_two(first, second, 1.5).is_err());
    }

    #[test]
    fn bound_entangled_domain_and_limit() {
        assert!(bound_entangled_state(0.0).is_err());
        assert!(bound_entangled_state(1.0).is_err());
        let near_one = bound_entangled_state(1.0 - 1e-9).unwrap();
        for l in [1, 2, 3, 4, 5, 6, 7, 8, 9] {
            assert!((near_one.element(l, l).re - 1.0 / 9.0).abs() < 1e-8);
        }
        assert!(near_one.element(7, 9).re.abs() < 1e-4);
        assert!((near_one.element(1, 5).re - 1.0 / 9.0).abs() < 1e-8);
    }

    #[test]
    fn collective_populations_of_simple_states() {
        let p = collective_populations(&product_state(One, Three));
        for (c, v) in p.iter() {
            let expected = match c {
                CollectiveState::A13 | CollectiveState::S13 => 0.5,
                _ => 0.0,
            };
            assert!((v - expected).abs() < 1e-15, "{c:?}");
        }
        let p = collective_populations(&product_state(One, Two));
        assert!((p.get(CollectiveState::A12) - 0.5).abs() < 1e-15);
        assert!((p.get(CollectiveState::S12) - 0.5).abs() < 1e-15);
        for (_, v) in collective_populations(&maximally_mixed()).iter() {
            assert!((v - 1.0 / 9.0).abs() < 1e-15);
        }
    }

    #[test]
    fn validation_diagnostics_are_distinct() {
        let id = ComplexMatrix::identity(DIM).scale_real(1.0 / 9.0);
        assert!(validate_density(id.clone()).is_ok());

        let mut diag = [0.0; DIM];
        diag[0] = 2.0;
        diag[1] = -1.0;
        assert!(matches!(
            validate_density(ComplexMatrix::from_real_diagonal(&diag)),
            Err(Error::NegativeEigenvalue { value }) if (value + 1.0).abs() < 1e-12
        ));

        let scaled = id.scale_real(1.0 + 1e-6);
        match validate_density(scaled) {
            Err(Error::TraceDefect { defect }) => assert!((defect - 1e-6).abs() < 1e-12),
            other => panic!("unexpected {other:?}"),
        }

        let mut skew = id.clone();
        skew[(0, 1)] = C64::new(0.01, 0.0);
        assert!(matches!(
            validate_density(skew),
            Err(Error::NotHermitian { .. })
        ));

        assert!(matches!(
            validate_density(ComplexMatrix::identity(3)),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn json_round_trip_and_rejection() {
        let rho = superposition_state(0.4).unwrap();
        let back = DensityMatrix::from_json(&rho.to_json()).unwrap();
        assert!(back.matrix().approx_eq(rho.matrix(), 0.0));

        let mut file = rho.to_file();
        file.dim = 4;
        assert!(matches!(file.into_density(), Err(Error::Format(_))));
        assert!(DensityMatrix::from_json("{\"dim\": 9}").is_err());
    }
}
