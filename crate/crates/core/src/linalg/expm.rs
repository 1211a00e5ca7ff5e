// SPDX-License-Identifier: Apache-2.0

//! Matrix exponential by scaling and squaring with diagonal Padé
//! approximants (Higham 2005, orders 3 through 13).

use super::eigen::{from_nalgebra, to_nalgebra};
use super::matrix::ComplexMatrix;
use crate::error::{Error, Result};

const THETA: [(usize, f64); 4] = [
    (3, 1.495585217958292e-2),
    (5, 2.539398330063230e-1),
    (7, 9.504178996162932e-1),
    (9, 2.097847961257068e0),
];
const THETA_13: f64 = 5.371920351148152e0;

const B3: [f64; 4] = [120.0, 60.0, 12.0, 1.0];
const B5: [f64; 6] = [30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0];
const B7: [f64; 8] = [17297280.0, 8648640.0, 1995840.0, 277200.0, 25200.0, 1512.0, 56.0, 1.0];
const B9: [f64; 10] = [
    17643225600.0,
    8821612800.0,
    2075673600.0,
    302702400.0,
    30270240.0,
    2162160.0,
    110880.0,
    3960.0,
    90.0,
    1.0,
];
const B13: [f64; 14] = [
    64764752532480000.0,
    32382376266240000.0,
    7771770303897600.0,
    1187353796428800.0,
    129060195264000.0,
    10559470521600.0,
    670442572800.0,
    33522128640.0,
    1323241920.0,
    40840800.0,
    960960.0,
    16380.0,
    182.0,
    1.0,
];

/// `exp(t·A)` for square `A`.
pub fn mat_exp(a: &ComplexMatrix, t: f64) -> Result<ComplexMatrix> {
    let n = a.require_square()?;
    let ta = a.scale_re(t);
    let norm = ta.norm_one();
    if norm == 0.0 {
        return Ok(ComplexMatrix::identity(n));
    }
    for (m, theta) in THETA {
        if norm <= theta {
            let coeffs: &[f64] = match m {
                3 => &B3,
                5 => &B5,
                7 => &B7,
                _ => &B9,
            };
            return pade_low(&ta, coeffs);
        }
    }
    let s = if norm > THETA_13 {
        (norm / THETA_13).log2().ceil().max(0.0) as i32
    } else {
        0
    };
    let scaled = ta.scale_re(0.5f64.powi(s));
    let mut r = pade13(&scaled)?;
    for _ in 0..s {
        r = &r * &r;
    }
    Ok(r)
}

fn lin_comb(terms: &[(f64, &ComplexMatrix)]) -> ComplexMatrix {
    let (c0, m0) = terms[0];
    let mut acc = m0.scale_re(c0);
    for &(c, m) in &terms[1..] {
        acc.add_assign_from(&m.scale_re(c));
    }
    acc
}

fn pade_low(a: &ComplexMatrix, b: &[f64]) -> Result<ComplexMatrix> {
    let n = a.rows();
    let id = ComplexMatrix::identity(n);
    let a2 = a * a;
    // powers[k] = A^{2k}
    let mut powers = vec![id.clone(), a2.clone()];
    while powers.len() * 2 < b.len() {
        let next = powers.last().expect("non-empty") * &a2;
        powers.push(next);
    }
    let odd: Vec<(f64, &ComplexMatrix)> = (0..b.len() / 2).map(|k| (b[2 * k + 1], &powers[k])).collect();
    let even: Vec<(f64, &ComplexMatrix)> = (0..b.len() / 2).map(|k| (b[2 * k], &powers[k])).collect();
    let u = a * &lin_comb(&odd);
    let v = lin_comb(&even);
    solve_pade(&u, &v)
}

fn pade13(a: &ComplexMatrix) -> Result<ComplexMatrix> {
    let b = &B13;
    let id = ComplexMatrix::identity(a.rows());
    let a2 = a * a;
    let a4 = &a2 * &a2;
    let a6 = &a4 * &a2;
    let inner_u = lin_comb(&[(b[13], &a6), (b[11], &a4), (b[9], &a2)]);
    let u = a * &(&(&a6 * &inner_u) + &lin_comb(&[(b[7], &a6), (b[5], &a4), (b[3], &a2), (b[1], &id)]));
    let inner_v = lin_comb(&[(b[12], &a6), (b[10], &a4), (b[8], &a2)]);
    let v = &(&a6 * &inner_v) + &lin_comb(&[(b[6], &a6), (b[4], &a4), (b[2], &a2), (b[0], &id)]);
    solve_pade(&u, &v)
}

/// Solves `(V − U) X = (V + U)`.
fn solve_pade(u: &ComplexMatrix, v: &ComplexMatrix) -> Result<ComplexMatrix> {
    let p = to_nalgebra(&(v + u));
    let q = to_nalgebra(&(v - u));
    q.lu()
        .solve(&p)
        .map(|x| from_nalgebra(&x))
        .ok_or_else(|| Error::Numerical("singular Padé denominator".into()))
}
