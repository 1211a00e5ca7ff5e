// SPDX-License-Identifier: Apache-2.0

//! PQ-matrices and the PQ pattern of a `d²×d²` representation.
//!
//! In row-major `vec` coordinates the diagonal of `ρ` sits at the indices
//! `k(d+1)`. A representation has the PQ pattern when no entry couples a
//! diagonal index with an off-diagonal one; the diagonal-to-diagonal block is
//! then the classical part `P` and the off-diagonal block, cut at the
//! diagonal indices into `(d−1)²` blocks of order `d`, is the quantum part.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, C64};

/// True iff every row and every column holds at most one entry with
/// modulus above `tol`, i.e. `a` is a permuted diagonal matrix.
pub fn is_pq_matrix(a: &ComplexMatrix, tol: f64) -> Result<bool> {
    let n = a.require_square()?;
    let mut col_seen = vec![false; n];
    for r in 0..n {
        let mut row_seen = false;
        for (c, seen) in col_seen.iter_mut().enumerate() {
            if a.get(r, c).norm() > tol {
                if row_seen || *seen {
                    return Ok(false);
                }
                row_seen = true;
                *seen = true;
            }
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MatrixClass {
    pub pq: bool,
    /// PQ, or all nonzero entries in a single column.
    pub alpha_pq: bool,
    /// PQ, or all nonzero entries in a single row.
    pub beta_pq: bool,
}

/// Classes of order-2 matrices. Other orders are unsupported.
pub fn class_of(a: &ComplexMatrix, tol: f64) -> Result<MatrixClass> {
    if a.rows() != 2 || a.cols() != 2 {
        return Err(Error::Unsupported(format!(
            "matrix classes are defined for order 2, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    let nz = |r: usize, c: usize| a.get(r, c).norm() > tol;
    let pq = is_pq_matrix(a, tol)?;
    let one_column = !(nz(0, 0) || nz(1, 0)) || !(nz(0, 1) || nz(1, 1));
    let one_row = !(nz(0, 0) || nz(0, 1)) || !(nz(1, 0) || nz(1, 1));
    Ok(MatrixClass {
        pq,
        alpha_pq: pq || one_column,
        beta_pq: pq || one_row,
    })
}

/// `d` such that `n = d²`.
pub fn inner_dim(n: usize) -> Result<usize> {
    let d = (n as f64).sqrt().round() as usize;
    if d * d != n || d < 2 {
        return Err(Error::NotSquareOfSquare(n));
    }
    Ok(d)
}

fn is_diag_index(k: usize, d: usize) -> bool {
    k % (d + 1) == 0
}

/// Off-diagonal `vec` indices in increasing order. Block `a` of the Q
/// layout is the slice `a·d .. (a+1)·d` of this list.
pub fn coherence_indices(d: usize) -> Vec<usize> {
    (0..d * d).filter(|&k| !is_diag_index(k, d)).collect()
}

/// Classical and quantum parts of a PQ representation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PqDecomposition {
    pub dim: usize,
    /// `p[i][j]` is the weight carried from `ρ_jj` to `ρ_ii`; columns sum to 1.
    pub p: Vec<Vec<f64>>,
    /// `q_blocks[a][b]` is the order-`d` block between the diagonal indices
    /// `a(d+1)` and `(a+1)(d+1)` in rows and `b(d+1)`, `(b+1)(d+1)` in columns.
    #[serde(skip)]
    pub q_blocks: Vec<Vec<ComplexMatrix>>,
    /// Largest modulus found outside the pattern.
    pub residual: f64,
}

impl PqDecomposition {
    pub fn p_matrix(&self) -> ComplexMatrix {
        let d = self.dim;
        ComplexMatrix::from_fn(d, d, |i, j| C64::new(self.p[i][j], 0.0))
    }

    /// The quantum part as one operator on the `d² − d` coherence
    /// coordinates.
    pub fn q_operator(&self) -> ComplexMatrix {
        let d = self.dim;
        let n = d * (d - 1);
        ComplexMatrix::from_fn(n, n, |r, c| self.q_blocks[r / d][c / d].get(r % d, c % d))
    }

    /// `(q11, q12)` for a qubit channel.
    pub fn q_pair(&self) -> Option<(C64, C64)> {
        (self.dim == 2).then(|| (self.q_blocks[0][0].get(0, 0), self.q_blocks[0][0].get(0, 1)))
    }

    pub fn is_markov(&self, tol: f64) -> bool {
        self.q_blocks.iter().flatten().all(|b| b.max_abs() <= tol)
    }
}

/// Result of testing a representation against the PQ pattern.
#[derive(Debug, Clone, PartialEq)]
pub enum PqPattern {
    Pq(PqDecomposition),
    NotPq { residual: f64, stochastic_defect: f64 },
}

impl PqPattern {
    pub fn decomposition(&self) -> Option<&PqDecomposition> {
        match self {
            PqPattern::Pq(dec) => Some(dec),
            PqPattern::NotPq { .. } => None,
        }
    }

    pub fn into_result(self) -> Result<PqDecomposition> {
        match self {
            PqPattern::Pq(dec) => Ok(dec),
            PqPattern::NotPq {
                residual,
                stochastic_defect,
            } => Err(Error::NotPq {
                residual,
                stochastic_defect,
            }),
        }
    }
}

/// Tests `m` (order `d²`) for the PQ pattern and extracts `P` and the
/// Q-blocks. `P` must be real, nonnegative and column-stochastic.
pub fn pq_pattern(m: &ComplexMatrix, tol: f64) -> Result<PqPattern> {
    let n = m.require_square()?;
    let d = inner_dim(n)?;
    let mut residual: f64 = 0.0;
    for r in 0..n {
        for c in 0..n {
            if is_diag_index(r, d) != is_diag_index(c, d) {
                residual = residual.max(m.get(r, c).norm());
            }
        }
    }
    let mut defect: f64 = 0.0;
    let mut p = vec![vec![0.0; d]; d];
    for (i, row) in p.iter_mut().enumerate() {
        for (j, pij) in row.iter_mut().enumerate() {
            let z = m.get(i * (d + 1), j * (d + 1));
            defect = defect.max(z.im.abs()).max(-z.re);
            *pij = z.re;
        }
    }
    for j in 0..d {
        let col: f64 = (0..d).map(|i| p[i][j]).sum();
        defect = defect.max((col - 1.0).abs());
    }
    if residual > tol || defect > tol {
        return Ok(PqPattern::NotPq {
            residual,
            stochastic_defect: defect,
        });
    }
    let coh = coherence_indices(d);
    let q_blocks = (0..d - 1)
        .map(|a| {
            (0..d - 1)
                .map(|b| ComplexMatrix::from_fn(d, d, |r, c| m.get(coh[a * d + r], coh[b * d + c])))
                .collect()
        })
        .collect();
    Ok(PqPattern::Pq(PqDecomposition {
        dim: d,
        p,
        q_blocks,
        residual,
    }))
}

/// Masks `m` into its classical part `[P]` (diagonal-to-diagonal entries)
/// and quantum part `[Q]` (coherence-to-coherence entries). No pattern or
/// stochasticity check; this is also what splits a generator `[Φ] − I`.
pub fn split_pattern(m: &ComplexMatrix) -> Result<(ComplexMatrix, ComplexMatrix)> {
    let n = m.require_square()?;
    let d = inner_dim(n)?;
    let mut p = ComplexMatrix::zeros(n, n);
    let mut q = ComplexMatrix::zeros(n, n);
    for r in 0..n {
        for c in 0..n {
            match (is_diag_index(r, d), is_diag_index(c, d)) {
                (true, true) => p.set(r, c, m.get(r, c)),
                (false, false) => q.set(r, c, m.get(r, c)),
                _ => {}
            }
        }
    }
    Ok((p, q))
}

/// `([P], [Q])` of a PQ representation; `[P] + [Q] = m` exactly.
pub fn split_pq_matrices(m: &ComplexMatrix, tol: f64) -> Result<(ComplexMatrix, ComplexMatrix)> {
    pq_pattern(m, tol)?.into_result()?;
    let (p, q) = split_pattern(m)?;
    debug_assert!((&p + &q).max_abs_diff(m) <= tol);
    Ok((p, q))
}
