//! Eigenvalues of general complex matrices: Householder reduction to upper
//! Hessenberg form followed by shifted QR iterations with Givens rotations.

use super::{ComplexMatrix, C64, ZERO};
use crate::error::{Error, Result};

const MAX_ITERATIONS_PER_EIGENVALUE: usize = 60;

fn hessenberg(a: &mut ComplexMatrix) {
    let n = a.rows();
    for k in 0..n.saturating_sub(2) {
        let alpha: f64 = (k + 1..n).map(|i| a[(i, k)].norm_sqr()).sum::<f64>().sqrt();
        if alpha == 0.0 {
            continue;
        }
        let x0 = a[(k + 1, k)];
        let phase = if x0.norm() == 0.0 {
            C64::new(1.0, 0.0)
        } else {
            x0 / x0.norm()
        };
        // v = x + e^{i arg x0}·‖x‖·e1, reflector H = I − 2vv†/(v†v).
        let mut v: Vec<C64> = (k + 1..n).map(|i| a[(i, k)]).collect();
        v[0] += phase * alpha;
        let vnorm2: f64 = v.iter().map(|z| z.norm_sqr()).sum();
        if vnorm2 == 0.0 {
            continue;
        }
        let beta = 2.0 / vnorm2;

        // A ← H A on rows k+1..n.
        for j in 0..n {
            let dot: C64 = v
                .iter()
                .enumerate()
                .map(|(r, vr)| vr.conj() * a[(k + 1 + r, j)])
                .sum();
            let f = dot * beta;
            for (r, vr) in v.iter().enumerate() {
                a[(k + 1 + r, j)] -= vr * f;
            }
        }
        // A ← A H on columns k+1..n.
        for i in 0..n {
            let dot: C64 = v
                .iter()
                .enumerate()
                .map(|(r, vr)| a[(i, k + 1 + r)] * vr)
                .sum();
            let f = dot * beta;
            for (r, vr) in v.iter().enumerate() {
                a[(i, k + 1 + r)] -= f * vr.conj();
            }
        }
        for i in k + 2..n {
            a[(i, k)] = ZERO;
        }
    }
}

fn givens(a: C64, b: C64) -> (f64, C64) {
    let an = a.norm();
    let r = (a.norm_sqr() + b.norm_sqr()).sqrt();
    if r == 0.0 {
        (1.0, ZERO)
    } else if an == 0.0 {
        (0.0, C64::new(1.0, 0.0))
    } else {
        (an / r, (a / an) * b.conj() / r)
    }
}

fn wilkinson_shift(a: C64, b: C64, c: C64, d: C64) -> C64 {
    let half = (a - d) * 0.5;
    let disc = (half * half + b * c).sqrt();
    let mu1 = (a + d) * 0.5 + disc;
    let mu2 = (a + d) * 0.5 - disc;
    if (mu1 - d).norm() < (mu2 - d).norm() {
        mu1
    } else {
        mu2
    }
}

/// All eigenvalues of a square complex matrix, in no particular order.
pub fn eigenvalues(m: &ComplexMatrix) -> Result<Vec<C64>> {
    m.check_square()?;
    m.check_finite()?;
    let n = m.rows();
    let mut h = m.clone();
    hessenberg(&mut h);
    let scale = h.frobenius_norm().max(f64::MIN_POSITIVE);

    let mut out = vec![ZERO; n];
    let mut hi = n - 1;
    let mut iterations = 0usize;
    let mut total = 0usize;

    while hi > 0 {
        // Locate the top of the active unreduced block.
        let mut lo = hi;
        while lo > 0 {
            let s = h[(lo - 1, lo - 1)].norm() + h[(lo, lo)].norm();
            let s = if s == 0.0 { scale } else { s };
            if h[(lo, lo - 1)].norm() <= f64::EPSILON * s {
                h[(lo, lo - 1)] = ZERO;
                break;
            }
            lo -= 1;
        }
        if lo == hi {
            out[hi] = h[(hi, hi)];
            hi -= 1;
            iterations = 0;
            continue;
        }

        iterations += 1;
        total += 1;
        if iterations > MAX_ITERATIONS_PER_EIGENVALUE || total > MAX_ITERATIONS_PER_EIGENVALUE * n {
            return Err(Error::NoConvergence("Hessenberg QR"));
        }

        let mu = if iterations % 11 == 10 {
            // exceptional shift
            h[(hi, hi)] + C64::new(h[(hi, hi - 1)].norm() * 0.75, 0.0)
        } else {
            wilkinson_shift(
                h[(hi - 1, hi - 1)],
                h[(hi - 1, hi)],
                h[(hi, hi - 1)],
                h[(hi, hi)],
            )
        };

        for i in lo..=hi {
            h[(i, i)] -= mu;
        }
        let mut rotations = Vec::with_capacity(hi - lo);
        for k in lo..hi {
            let (c, s) = givens(h[(k, k)], h[(k + 1, k)]);
            for j in k..=hi {
                let x = h[(k, j)];
                let y = h[(k + 1, j)];
                h[(k, j)] = x * c + s * y;
                h[(k + 1, j)] = -s.conj() * x + y * c;
            }
            h[(k + 1, k)] = ZERO;
            rotations.push((c, s));
        }
        for (offset, &(c, s)) in rotations.iter().enumerate() {
            let k = lo + offset;
            for i in lo..=(k + 1).min(hi) {
                let x = h[(i, k)];
                let y = h[(i, k + 1)];
                h[(i, k)] = x * c + y * s.conj();
                h[(i, k + 1)] = -s * x + y * c;
            }
        }
        for i in lo..=hi {
            h[(i, i)] += mu;
        }
    }
    out[0] = h[(0, 0)];
    Ok(out)
}
