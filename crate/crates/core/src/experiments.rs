//! Parameter sweeps behind the command-line figures.
//!
//! Grids are closed intervals whose last point is the literal upper bound, so
//! limiting values appear as exact rows.

use std::f64::consts::FRAC_PI_2;

use crate::asymptotics::{
    asymptotic_state, region_membership, BoundaryCurve, CurvePoint, Membership,
};
use crate::error::Result;
use crate::measures::{linear_entropy, min_pt_eigenvalue, negativity, realignment_negativity};
use crate::sampling::{random_diagonal_state, stream_rng};
use crate::states::{
    bound_entangled_state, mixture_two, superposition_state, BasisIndex, DensityMatrix, Level,
};

pub const FIG1_POINTS: usize = 201;
pub const FIG2_POINTS: usize = 201;
pub const FIG3_CURVE_POINTS: usize = 501;
pub const FIG4_POINTS: usize = 99;

/// `n` evenly spaced points from `lo` to `hi`, both included exactly.
pub fn closed_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    assert!(n >= 2, "grid needs at least two points");
    (0..n)
        .map(|i| {
            if i == n - 1 {
                hi
            } else {
                lo + (hi - lo) * i as f64 / (n - 1) as f64
            }
        })
        .collect()
}

/// Negativity of the limit state reached from `rho0`.
pub fn asymptotic_negativity(rho0: &DensityMatrix) -> Result<f64> {
    Ok(negativity(&asymptotic_state(rho0)?))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Fig1Row {
    pub phi: f64,
    pub negativity: f64,
}

/// Limit negativity of `cos φ |1_A 2_B⟩ + sin φ |1_A 3_B⟩` over `φ ∈ [0, π/2]`.
pub fn fig1(points: usize) -> Result<Vec<Fig1Row>> {
    closed_grid(0.0, FRAC_PI_2, points)
        .into_iter()
        .map(|phi| {
            Ok(Fig1Row {
                phi,
                negativity: asymptotic_negativity(&superposition_state(phi)?)?,
            })
        })
        .collect()
}

/// Column name and the two product states `(A level, B level)` mixed.
pub type Mixture = (&'static str, (Level, Level), (Level, Level));

/// The two-state mixtures compared in the mixture figure.
pub const FIG2_MIXTURES: [Mixture; 3] = [
    (
        "n_12_13",
        (Level::One, Level::Two),
        (Level::One, Level::Three),
    ),
    (
        "n_11_13",
        (Level::One, Level::One),
        (Level::One, Level::Three),
    ),
    (
        "n_13_23",
        (Level::One, Level::Three),
        (Level::Two, Level::Three),
    ),
];

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Fig2Row {
    pub p: f64,
    /// Limit negativity per entry of [`FIG2_MIXTURES`], weight `p` on the
    /// first state.
    pub negativity: [f64; 3],
}

pub fn fig2(points: usize) -> Result<Vec<Fig2Row>> {
    closed_grid(0.0, 1.0, points)
        .into_iter()
        .map(|p| {
            let mut negativity = [0.0; 3];
            for (slot, (_, first, second)) in negativity.iter_mut().zip(FIG2_MIXTURES) {
                let rho = mixture_two(
                    BasisIndex::new(first.0, first.1),
                    BasisIndex::new(second.0, second.1),
                    p,
                )?;
                *slot = asymptotic_negativity(&rho)?;
            }
            Ok(Fig2Row { p, negativity })
        })
        .collect()
}

/// Boundary curve samples for the entropy–negativity figure.
pub fn curves(points: usize) -> Vec<(BoundaryCurve, CurvePoint)> {
    BoundaryCurve::ALL
        .iter()
        .flat_map(|&c| c.sample(points).into_iter().map(move |p| (c, p)))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RegionSample {
    pub index: u64,
    pub linear_entropy: f64,
    pub negativity: f64,
    pub membership: Membership,
    pub distance: f64,
}

/// Limit states of `samples` random diagonal initial states, classified
/// against the boundary region. Sample `i` depends only on `(seed, i)`.
pub fn region_samples(seed: u64, samples: usize) -> Result<Vec<RegionSample>> {
    (0..samples as u64)
        .map(|index| {
            let rho0 = random_diagonal_state(&mut stream_rng(seed, index));
            let limit = asymptotic_state(&rho0)?;
            let s_l = linear_entropy(&limit);
            let n = negativity(&limit);
            let q = region_membership(s_l, n)?;
            Ok(RegionSample {
                index,
                linear_entropy: s_l,
                negativity: n,
                membership: q.membership,
                distance: q.distance,
            })
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Fig4Row {
    pub a: f64,
    pub asymptotic_negativity: f64,
    pub initial_realignment_negativity: f64,
    pub initial_min_pt_eigenvalue: f64,
}

/// The bound-entangled family over `a ∈ [0.01, 0.99]`.
pub fn fig4(points: usize) -> Result<Vec<Fig4Row>> {
    closed_grid(0.01, 0.99, points)
        .into_iter()
        .map(|a| {
            let rho = bound_entangled_state(a)?;
            Ok(Fig4Row {
                a,
                asymptotic_negativity: asymptotic_negativity(&rho)?,
                initial_realignment_negativity: realignment_negativity(&rho),
                initial_min_pt_eigenvalue: min_pt_eigenvalue(&rho),
            })
        })
        .collect()
}
