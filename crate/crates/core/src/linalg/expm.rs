//! Matrix exponential by scaling and squaring with a [13/13] Padé
//! approximant, plus the LU solver it needs.
//!
//! With the scaling chosen so that `‖A/2^s‖₁ ≤ θ₁₃ ≈ 5.37`, the Padé step has
//! backward error below unit roundoff. The squaring phase amplifies rounding
//! roughly by `‖tL‖`, so for the 81×81 generators used here and
//! `‖tL‖₁ ≤ 50` the forward error in `exp(tL)v` stays below `1e-10·‖v‖`.

use super::{ComplexMatrix, C64, ZERO};
use crate::error::{Error, Result};

const THETA_13: f64 = 5.371_920_351_148_152;

const PADE_13: [f64; 14] = [
    64_764_752_532_480_000.0,
    32_382_376_266_240_000.0,
    7_771_770_303_897_600.0,
    1_187_353_796_428_800.0,
    129_060_195_264_000.0,
    10_559_470_521_600.0,
    670_442_572_800.0,
    33_522_128_640.0,
    1_323_241_920.0,
    40_840_800.0,
    960_960.0,
    16_380.0,
    182.0,
    1.0,
];

fn linear_combination(terms: &[(f64, &ComplexMatrix)]) -> ComplexMatrix {
    let (first_coef, first) = terms[0];
    let mut out = first.scale_real(first_coef);
    for &(coef, m) in &terms[1..] {
        for (o, x) in out.as_mut_slice().iter_mut().zip(m.as_slice()) {
            *o += x * coef;
        }
    }
    out
}

/// `exp(A)` for a square matrix.
pub fn expm(a: &ComplexMatrix) -> Result<ComplexMatrix> {
    a.check_square()?;
    a.check_finite()?;
    let n = a.rows();
    let norm = a.norm_one();
    let squarings = if norm > THETA_13 {
        (norm / THETA_13).log2().ceil() as i32
    } else {
        0
    };
    let a = a.scale_real(0.5f64.powi(squarings));
    let b = &PADE_13;
    let id = ComplexMatrix::identity(n);
    let a2 = &a * &a;
    let a4 = &a2 * &a2;
    let a6 = &a4 * &a2;

    let u_inner = &a6 * &linear_combination(&[(b[13], &a6), (b[11], &a4), (b[9], &a2)]);
    let u_inner = linear_combination(&[
        (1.0, &u_inner),
        (b[7], &a6),
        (b[5], &a4),
        (b[3], &a2),
        (b[1], &id),
    ]);
    let u = &a * &u_inner;
    let v_inner = &a6 * &linear_combination(&[(b[12], &a6), (b[10], &a4), (b[8], &a2)]);
    let v = linear_combination(&[
        (1.0, &v_inner),
        (b[6], &a6),
        (b[4], &a4),
        (b[2], &a2),
        (b[0], &id),
    ]);

    let p = &v + &u;
    let q = &v - &u;
    let mut r = solve(&q, &p)?;
    for _ in 0..squarings {
        r = &r * &r;
    }
    Ok(r)
}

/// `exp(tL)·v`.
pub fn matrix_exponential_action(l: &ComplexMatrix, v: &[C64], t: f64) -> Result<Vec<C64>> {
    if !t.is_finite() || t < 0.0 {
        return Err(Error::OutOfRange {
            name: "t",
            value: t,
            domain: "[0, ∞)",
        });
    }
    l.check_square()?;
    if v.len() != l.cols() {
        return Err(Error::DimensionMismatch {
            expected: format!("vector of length {}", l.cols()),
            found: format!("length {}", v.len()),
        });
    }
    if t == 0.0 {
        return Ok(v.to_vec());
    }
    Ok(expm(&l.scale_real(t))?.mat_vec(v))
}

/// Solves `A X = B` by LU decomposition with partial pivoting.
pub fn solve(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    a.check_square()?;
    let n = a.rows();
    if b.rows() != n {
        return Err(Error::DimensionMismatch {
            expected: format!("{n} rows"),
            found: format!("{} rows", b.rows()),
        });
    }
    let mut lu = a.clone();
    let mut x = b.clone();
    let m = b.cols();
    let scale = a.max_abs();

    for k in 0..n {
        let pivot = (k..n)
            .max_by(|&i, &j| lu[(i, k)].norm().total_cmp(&lu[(j, k)].norm()))
            .unwrap();
        if lu[(pivot, k)].norm() <= f64::EPSILON * scale * n as f64 {
            return Err(Error::Singular);
        }
        if pivot != k {
            for j in 0..n {
                let tmp = lu[(k, j)];
                lu[(k, j)] = lu[(pivot, j)];
                lu[(pivot, j)] = tmp;
            }
            for j in 0..m {
                let tmp = x[(k, j)];
                x[(k, j)] = x[(pivot, j)];
                x[(pivot, j)] = tmp;
            }
        }
        let inv = 1.0 / lu[(k, k)];
        for i in k + 1..n {
            let f = lu[(i, k)] * inv;
            if f == ZERO {
                continue;
            }
            lu[(i, k)] = f;
            for j in k + 1..n {
                let u = lu[(k, j)];
                lu[(i, j)] -= f * u;
            }
            for j in 0..m {
                let u = x[(k, j)];
                x[(i, j)] -= f * u;
            }
        }
    }
    for k in (0..n).rev() {
        let inv = 1.0 / lu[(k, k)];
        for j in 0..m {
            let mut acc = x[(k, j)];
            for i in k + 1..n {
                acc -= lu[(k, i)] * x[(i, j)];
            }
            x[(k, j)] = acc * inv;
        }
    }
    Ok(x)
}

#[cfg(test)]
pub(crate) fn inverse(a: &ComplexMatrix) -> Result<ComplexMatrix> {
    solve(a, &ComplexMatrix::identity(a.rows()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_generator_is_identity_action() {
        let l = ComplexMatrix::zeros(81, 81);
        let v: Vec<C64> = (0..81).map(|i| C64::new(i as f64, -(i as f64))).collect();
        let out = matrix_exponential_action(&l, &v, 7.0).unwrap();
        for (a, b) in out.iter().zip(&v) {
            assert!((a - b).norm() <= 1e-15 * b.norm());
        }
    }

    #[test]
    fn scalar_decay() {
        let l = ComplexMatrix::from_real_diagonal(&[-1.0]);
        let out = matrix_exponential_action(&l, &[C64::new(1.0, 0.0)], 1.0).unwrap();
        assert!((out[0].re - (-1.0f64).exp()).abs() < 1e-10);
        assert!(out[0].im.abs() < 1e-15);
    }

    #[test]
    fn negative_time_rejected() {
        let l = ComplexMatrix::identity(2);
        let v = vec![ZERO; 2];
        assert!(matrix_exponential_action(&l, &v, -1.0).is_err());
    }

    #[test]
    fn rotation_exponential() {
        // exp of [[0, -w], [w, 0]] is a rotation by w.
        let w = 40.0;
        let mut l = ComplexMatrix::zeros(2, 2);
        l[(0, 1)] = C64::new(-w, 0.0);
        l[(1, 0)] = C64::new(w, 0.0);
        let e = expm(&l).unwrap();
        assert!((e[(0, 0)].re - w.cos()).abs() < 1e-12);
        assert!((e[(1, 0)].re - w.sin()).abs() < 1e-12);
    }

    #[test]
    fn taylor_agreement_for_small_norm() {
        let a = ComplexMatrix::from_fn(5, 5, |i, j| {
            C64::new(
                ((i * 7 + j * 3) % 5) as f64 * 0.05 - 0.1,
                (i as f64 - j as f64) * 0.02,
            )
        });
        let mut term = ComplexMatrix::identity(5);
        let mut sum = term.clone();
        for k in 1..30 {
            term = (&term * &a).scale_real(1.0 / k as f64);
            sum = &sum + &term;
        }
        assert!(expm(&a).unwrap().approx_eq(&sum, 1e-14));
    }

    #[test]
    fn solve_recovers_solution() {
        let a = ComplexMatrix::from_fn(6, 6, |i, j| {
            C64::new(
                if i == j {
                    4.0
                } else {
                    0.3 * (i + j) as f64 % 1.0
                },
                0.1 * i as f64,
            )
        });
        let x = ComplexMatrix::from_fn(6, 2, |i, j| C64::new(i as f64, j as f64));
        let b = &a * &x;
        assert!(solve(&a, &b).unwrap().approx_eq(&x, 1e-12));
    }
}
