// SPDX-License-Identifier: Apache-2.0

//! Kraus-level PQ constructions: the qubit diagonal/antidiagonal split,
//! verification of supplied PQ Kraus lists, and the unitary mixture of a
//! unital qubit PQ-channel.

use rand::Rng;
use serde::Serialize;

use super::pattern::{is_pq_matrix, pq_pattern};
use crate::channel::{convex_mix, matrix_rep_of, KrausChannel};
use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, C64};
use crate::random::random_phase;

const DROP_TOL: f64 = 1e-14;

/// Splits each Kraus operator of a qubit PQ-channel into its diagonal and
/// antidiagonal parts. The map is unchanged; every returned operator is a
/// PQ-matrix.
pub fn pq_kraus_split_qubit(ch: &KrausChannel, tol: f64) -> Result<KrausChannel> {
    if ch.dim() != 2 {
        return Err(Error::Unsupported(format!(
            "PQ Kraus split is only constructive for d = 2 (got d = {})",
            ch.dim()
        )));
    }
    pq_pattern(&ch.matrix_rep(), tol)?.into_result()?;
    let mut out = Vec::with_capacity(2 * ch.kraus().len());
    for v in ch.kraus() {
        let z = C64::new(0.0, 0.0);
        let diag = ComplexMatrix::diag(&[v.get(0, 0), v.get(1, 1)]);
        let anti = ComplexMatrix::from_rows(&[vec![z, v.get(0, 1)], vec![v.get(1, 0), z]]).expect("2x2");
        out.extend([diag, anti].into_iter().filter(|m| m.max_abs() > DROP_TOL));
    }
    KrausChannel::new(out, ch.tp_tol().max(tol))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CandidateReport {
    pub valid: bool,
    /// `‖∑ [W_k] − [Φ]‖_max`
    pub rep_residual: f64,
    /// `‖∑ W_k* W_k − I‖_max`
    pub tp_residual: f64,
}

/// Checks a proposed PQ Kraus list for `ch`. Fails if some candidate is not
/// a PQ-matrix; otherwise reports whether it reproduces the representation
/// and is trace-preserving within `tol`.
pub fn verify_pq_kraus_candidate(
    ch: &KrausChannel,
    candidate: &[ComplexMatrix],
    tol: f64,
) -> Result<CandidateReport> {
    if candidate.is_empty() {
        return Err(Error::EmptyKrausList);
    }
    for (index, w) in candidate.iter().enumerate() {
        if w.rows() != ch.dim() || w.cols() != ch.dim() {
            return Err(Error::DimensionMismatch {
                context: "candidate kraus operator",
                expected: ch.dim(),
                found: w.rows(),
            });
        }
        if !is_pq_matrix(w, tol)? {
            return Err(Error::NotPqMatrix { index });
        }
    }
    let rep_residual = matrix_rep_of(candidate).max_abs_diff(&ch.matrix_rep());
    let tp_residual = KrausChannel::new_unchecked(candidate.to_vec())?.validate(tol).tp_residual;
    Ok(CandidateReport {
        valid: rep_residual <= tol && tp_residual <= tol,
        rep_residual,
        tp_residual,
    })
}

/// Phases `(a, b, c, d)` of the diagonal pair and `(f, g, h, j)` of the
/// antidiagonal pair.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MixturePhases {
    pub diagonal: [f64; 4],
    pub antidiagonal: [f64; 4],
}

/// `p11·Φ_D + p12·Φ_A`, where `Φ_D = ½(U₁·U₁* + U₂·U₂*)` with
/// `U₁ = diag(e^{ia}, e^{ib})`, `U₂ = diag(e^{ic}, e^{id})`, and `Φ_A` the same
/// with antidiagonal `U₃ = [[0, e^{if}], [e^{ig}, 0]]`, `U₄ = [[0, e^{ih}], [e^{ij}, 0]]`.
pub fn diag_antidiag_mixture(p11: f64, p12: f64, ph: &MixturePhases) -> Result<KrausChannel> {
    let e = |x: f64| C64::from_polar(1.0, x);
    let z = C64::new(0.0, 0.0);
    let [a, b, c, d] = ph.diagonal;
    let [f, g, h, j] = ph.antidiagonal;
    let unit = |m: ComplexMatrix| KrausChannel::unitary(m, 1e-12).expect("phase matrices are unitary");
    let u1 = unit(ComplexMatrix::diag(&[e(a), e(b)]));
    let u2 = unit(ComplexMatrix::diag(&[e(c), e(d)]));
    let anti = |x: f64, y: f64| ComplexMatrix::from_rows(&[vec![z, e(x)], vec![e(y), z]]).expect("2x2");
    let u3 = unit(anti(f, g));
    let u4 = unit(anti(h, j));
    let phi_d = convex_mix(&[0.5, 0.5], &[u1, u2])?;
    let phi_a = convex_mix(&[0.5, 0.5], &[u3, u4])?;
    convex_mix(&[p11, p12], &[phi_d, phi_a])
}

/// Rewrites a unital qubit PQ-channel as a convex combination of diagonal
/// and antidiagonal unitary conjugations. Returns the mixture channel and
/// the phases used.
pub fn unitary_mixture_qubit(ch: &KrausChannel, tol: f64) -> Result<(KrausChannel, MixturePhases)> {
    if ch.dim() != 2 || !ch.is_unital(tol) {
        return Err(Error::Unsupported(
            "unitary mixture construction needs a unital qubit channel".into(),
        ));
    }
    let dec = pq_pattern(&ch.matrix_rep(), tol)?.into_result()?;
    let (q11, q12) = dec.q_pair().expect("qubit");
    let (p11, p12) = (dec.p[0][0], dec.p[0][1]);
    let split = |q: C64, w: f64| -> Result<[f64; 2]> {
        if w <= tol {
            return Ok([0.0, 0.0]);
        }
        let ratio = q.norm() / w;
        if ratio > 1.0 + tol {
            return Err(Error::Numerical(format!("coherence {ratio} exceeds its classical weight")));
        }
        let spread = ratio.min(1.0).acos();
        Ok([q.arg() + spread, q.arg() - spread])
    };
    let [s1, s2] = split(q11, p11)?;
    let [t1, t2] = split(q12, p12)?;
    let phases = MixturePhases {
        diagonal: [s1, 0.0, s2, 0.0],
        antidiagonal: [t1, 0.0, t2, 0.0],
    };
    // weights must sum to 1 within 1e-12; renormalise the extracted pair
    let total = p11 + p12;
    Ok((diag_antidiag_mixture(p11 / total, p12 / total, &phases)?, phases))
}

/// A random unital qubit PQ-channel: a random convex combination of two
/// diagonal and two antidiagonal unitaries with random phases. With
/// `real_q` the phases are multiples of π, which makes the quantum part
/// real.
pub fn random_unital_qubit_pq_channel(rng: &mut impl Rng, real_q: bool) -> KrausChannel {
    let raw: Vec<f64> = (0..4).map(|_| rng.random_range(0.05..1.0)).collect();
    let total: f64 = raw.iter().sum();
    let mut weights: Vec<f64> = raw.iter().map(|w| w / total).collect();
    let fix: f64 = weights[1..].iter().sum();
    weights[0] = 1.0 - fix;
    let mut phase = || {
        if real_q {
            if rng.random_bool(0.5) {
                std::f64::consts::PI
            } else {
                0.0
            }
        } else {
            random_phase(rng)
        }
    };
    let e = |x: f64| C64::from_polar(1.0, x);
    let z = C64::new(0.0, 0.0);
    let chans: Vec<KrausChannel> = (0..4)
        .map(|k| {
            let (x, y) = (phase(), phase());
            let u = if k < 2 {
                ComplexMatrix::diag(&[e(x), e(y)])
            } else {
                ComplexMatrix::from_rows(&[vec![z, e(x)], vec![e(y), z]]).expect("2x2")
            };
            KrausChannel::unitary(u, 1e-12).expect("unitary")
        })
        .collect();
    convex_mix(&weights, &chans).expect("weights are normalised")
}
