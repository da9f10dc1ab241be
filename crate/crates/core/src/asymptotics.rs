//! Closed-form long-time limit of the small-separation dynamics.
//!
//! With `Γ13 = Γ23 = γ` the states `|a13⟩`, `|a23⟩` and `|g⟩` span a
//! decoherence-free block, and every initial state relaxes onto it. The limit
//! is fixed by six numbers `x, y, t` (real) and `z, w, v` (complex), each a
//! linear functional of the initial matrix elements.

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, C64};
use crate::states::{DensityMatrix, DIM, POSITIVITY_TOL};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AsymptoticParams {
    pub x: f64,
    pub y: f64,
    pub t: f64,
    pub z: C64,
    pub w: C64,
    pub v: C64,
}

/// Parameters of the limit state reached from `rho0`.
pub fn asymptotic_params(rho0: &DensityMatrix) -> AsymptoticParams {
    let r = |l: usize, m: usize| rho0.element(l, m);
    let x = (r(2, 2).re + 2.0 * r(3, 3).re + r(4, 4).re + 2.0 * r(7, 7).re
        - 2.0 * r(2, 4).re
        - 4.0 * r(3, 7).re)
        / 8.0;
    let z = (r(3, 6) - r(3, 8) - r(7, 6) + r(7, 8)) / 4.0;
    let w = (r(2, 6) + r(2, 8) + r(3, 9) * 2.0 - r(4, 6) - r(4, 8) - r(7, 9) * 2.0) / 4.0;
    let y = (r(2, 2).re + r(4, 4).re + 2.0 * r(6, 6).re + 2.0 * r(8, 8).re
        - 2.0 * r(2, 4).re
        - 4.0 * r(6, 8).re)
        / 8.0;
    let v = (-r(2, 3) - r(2, 7) + r(4, 3) + r(4, 7) + r(6, 9) * 2.0 - r(8, 9) * 2.0) / 4.0;
    AsymptoticParams {
        x,
        y,
        t: 1.0 - 2.0 * x - 2.0 * y,
        z,
        w,
        v,
    }
}

impl AsymptoticParams {
    /// The limit matrix, nonzero only on rows and columns 3, 6, 7, 8, 9.
    pub fn to_matrix(&self) -> ComplexMatrix {
        let (x, y, t) = (
            C64::new(self.x, 0.0),
            C64::new(self.y, 0.0),
            C64::new(self.t, 0.0),
        );
        let (z, w, v) = (self.z, self.w, self.v);
        let rows: [(usize, [C64; 5]); 5] = [
            (3, [x, z, -x, -z, w]),
            (6, [z.conj(), y, -z.conj(), -y, v]),
            (7, [-x, -z, x, z, -w]),
            (8, [-z.conj(), -y, z.conj(), y, -v]),
            (9, [w.conj(), v.conj(), -w.conj(), -v.conj(), t]),
        ];
        let cols = [3, 6, 7, 8, 9];
        let mut m = ComplexMatrix::zeros(DIM, DIM);
        for (row, values) in rows {
            for (col, value) in cols.iter().zip(values) {
                m[(row - 1, col - 1)] = value;
            }
        }
        m
    }

    pub fn to_state(&self) -> Result<DensityMatrix> {
        DensityMatrix::new(self.to_matrix()).map_err(|e| match e {
            Error::NegativeEigenvalue { value } if value < -POSITIVITY_TOL => {
                Error::Internal(format!("asymptotic state has eigenvalue {value:e}"))
            }
            other => Error::Internal(format!("asymptotic state invalid: {other}")),
        })
    }
}

/// The limit state `lim_{t→∞} T_t ρ0` for closely spaced atoms.
pub fn asymptotic_state(rho0: &DensityMatrix) -> Result<DensityMatrix> {
    asymptotic_params(rho0).to_state()
}

/// Closed-form negativity of the limit state when `z = w = v = 0`:
/// `½[√(4(x² + y²) + t²) − t]`.
pub fn diag_asymptotic_negativity(x: f64, y: f64, t: f64) -> Result<f64> {
    for (name, value) in [("x", x), ("y", y), ("t", t)] {
        if !(value.is_finite() && value >= 0.0) {
            return Err(Error::OutOfRange {
                name,
                value,
                domain: "[0, ∞)",
            });
        }
    }
    let expected = 1.0 - 2.0 * x - 2.0 * y;
    if (t - expected).abs() > 1e-12 {
        return Err(Error::InconsistentParams { t, expected });
    }
    Ok(0.5 * ((4.0 * (x * x + y * y) + t * t).sqrt() - t))
}

/// Limit negativity for `p|1_A 2_B⟩⟨·| + (1 − p)|1_A 3_B⟩⟨·|`:
/// `√(4 − 2p + p²)/√32 − 1/4`.
pub fn mixture_negativity(p: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::OutOfRange {
            name: "p",
            value: p,
            domain: "[0, 1]",
        });
    }
    Ok((4.0 - 2.0 * p + p * p).sqrt() / 32f64.sqrt() - 0.25)
}

/// The three curves bounding the (linear entropy, negativity) image of
/// limit states reached from diagonal initial states.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BoundaryCurve {
    /// Mixtures of `|1_A 1_B⟩` and `|1_A 2_B⟩`.
    K1,
    /// Mixtures of `|1_A 1_B⟩` and `|1_A 3_B⟩`.
    K2,
    /// Mixtures of `|1_A 2_B⟩` and `|1_A 3_B⟩`.
    K3,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CurvePoint {
    pub s: f64,
    pub linear_entropy: f64,
    pub negativity: f64,
}

impl BoundaryCurve {
    pub const ALL: [BoundaryCurve; 3] = [BoundaryCurve::K1, BoundaryCurve::K2, BoundaryCurve::K3];

    pub fn label(self) -> &'static str {
        match self {
            BoundaryCurve::K1 => "k1",
            BoundaryCurve::K2 => "k2",
            BoundaryCurve::K3 => "k3",
        }
    }

    /// Closed parameter interval of the curve.
    pub fn domain(self) -> (f64, f64) {
        match self {
            BoundaryCurve::K1 => (3.0, 8.0),
            BoundaryCurve::K2 => (1.0, 2.0),
            // s = 4 − 2p + p² over the mixing weight p ∈ [0, 1]
            BoundaryCurve::K3 => (3.0, 4.0),
        }
    }

    /// Curve parameter as a function of the weight `q ∈ [0, 1]` of the
    /// first state in the generating mixture. Uniform in `q` is a much
    /// better sampling than uniform in `s` near the square-root endpoints.
    pub fn s_from_weight(self, q: f64) -> f64 {
        match self {
            BoundaryCurve::K1 => 3.0 + 2.0 * q + 3.0 * q * q,
            BoundaryCurve::K2 => 1.0 + q * q,
            BoundaryCurve::K3 => 4.0 - 2.0 * q + q * q,
        }
    }

    /// Recovers `s` from a linear entropy value (inverse of the `S_L(s)`
    /// relation of the curve).
    pub fn s_from_entropy(self, linear_entropy: f64) -> f64 {
        match self {
            BoundaryCurve::K1 | BoundaryCurve::K3 => 8.0 - 64.0 * linear_entropy / 9.0,
            BoundaryCurve::K2 => 2.0 - 16.0 * linear_entropy / 9.0,
        }
    }

    pub fn point(self, s: f64) -> Result<CurvePoint> {
        let (lo, hi) = self.domain();
        if !(s.is_finite() && s >= lo - 1e-12 && s <= hi + 1e-12) {
            return Err(Error::OutOfRange {
                name: "s",
                value: s,
                domain: match self {
                    BoundaryCurve::K1 => "[3, 8]",
                    BoundaryCurve::K2 => "[1, 2]",
                    BoundaryCurve::K3 => "[3, 4]",
                },
            });
        }
        let s = s.clamp(lo, hi);
        let (linear_entropy, negativity) = match self {
            BoundaryCurve::K1 => (
                9.0 * (8.0 - s) / 64.0,
                (2.0 * s).sqrt() / 8.0 - 0.25 * (1.0 + ((3.0 * s - 8.0).sqrt() - 1.0) / 3.0),
            ),
            BoundaryCurve::K2 => (
                9.0 * (2.0 - s) / 16.0,
                0.25 * ((2.0 * s).sqrt() - (s - 1.0).sqrt() - 1.0),
            ),
            BoundaryCurve::K3 => (9.0 * (8.0 - s) / 64.0, (2.0 * s).sqrt() / 8.0 - 0.25),
        };
        Ok(CurvePoint {
            s,
            linear_entropy,
            negativity,
        })
    }

    /// `n ≥ 2` points ordered by increasing mixing weight.
    pub fn sample(self, n: usize) -> Vec<CurvePoint> {
        assert!(n >= 2, "need at least two samples");
        (0..n)
            .map(|i| {
                let q = if i == n - 1 {
                    1.0
                } else {
                    i as f64 / (n - 1) as f64
                };
                self.point(self.s_from_weight(q)).expect("within domain")
            })
            .collect()
    }
}

pub fn boundary_curve(which: BoundaryCurve, s: f64) -> Result<CurvePoint> {
    which.point(s)
}

/// Width of the band around the boundary classified as on it.
pub const BOUNDARY_BAND: f64 = 1e-6;
/// Samples per boundary curve used for membership tests.
pub const REGION_SAMPLES_PER_CURVE: usize = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Membership {
    Inside,
    Boundary,
    Outside,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RegionQuery {
    pub membership: Membership,
    /// Euclidean distance to the sampled boundary.
    pub distance: f64,
}

/// Closed boundary polygon: k2 from the origin to the `|1_A 3_B⟩` corner,
/// k3 to the `|1_A 2_B⟩` corner, then k1 back to the origin.
fn region_polygon() -> &'static [(f64, f64)] {
    static POLYGON: OnceLock<Vec<(f64, f64)>> = OnceLock::new();
    POLYGON.get_or_init(|| {
        let n = REGION_SAMPLES_PER_CURVE;
        let mut pts = Vec::with_capacity(3 * n);
        for p in BoundaryCurve::K2.sample(n).iter().rev() {
            pts.push((p.linear_entropy, p.negativity));
        }
        for p in BoundaryCurve::K3.sample(n).iter().skip(1) {
            pts.push((p.linear_entropy, p.negativity));
        }
        for p in BoundaryCurve::K1.sample(n).iter().skip(1) {
            pts.push((p.linear_entropy, p.negativity));
        }
        pts
    })
}

fn segment_distance(p: (f64, f64), a: (f64, f64), b: (f64, f64)) -> f64 {
    let (dx, dy) = (b.0 - a.0, b.1 - a.1);
    let len2 = dx * dx + dy * dy;
    let u = if len2 == 0.0 {
        0.0
    } else {
        (((p.0 - a.0) * dx + (p.1 - a.1) * dy) / len2).clamp(0.0, 1.0)
    };
    let (cx, cy) = (a.0 + u * dx, a.1 + u * dy);
    ((p.0 - cx).powi(2) + (p.1 - cy).powi(2)).sqrt()
}

/// Classifies a `(linear entropy, negativity)` point against the region
/// bounded by the three curves.
pub fn region_membership(linear_entropy: f64, negativity: f64) -> Result<RegionQuery> {
    if !(linear_entropy.is_finite() && negativity.is_finite()) {
        return Err(Error::NonFinite);
    }
    let p = (linear_entropy, negativity);
    let poly = region_polygon();
    let mut distance = f64::INFINITY;
    let mut inside = false;
    for i in 0..poly.len() {
        let a = poly[i];
        let b = poly[(i + 1) % poly.len()];
        distance = distance.min(segment_distance(p, a, b));
        if (a.1 > p.1) != (b.1 > p.1) {
            let cross = a.0 + (p.1 - a.1) * (b.0 - a.0) / (b.1 - a.1);
            if p.0 < cross {
                inside = !inside;
            }
        }
    }
    let membership = if distance <= BOUNDARY_BAND {
        Membership::Boundary
    } else if inside {
        Membership::Inside
    } else {
        Membership::Outside
    };
    Ok(RegionQuery {
        membership,
        distance,
    })
}
