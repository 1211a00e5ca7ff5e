// SPDX-License-Identifier: Apache-2.0

//! Spectral helpers. The decompositions themselves are delegated to
//! `nalgebra`; this module only converts and interprets.

use nalgebra::DMatrix;
use serde::Serialize;

use super::matrix::{ComplexMatrix, C64};
use crate::error::{Error, Result};

pub(crate) fn to_nalgebra(a: &ComplexMatrix) -> DMatrix<C64> {
    DMatrix::from_row_slice(a.rows(), a.cols(), a.as_slice())
}

pub(crate) fn from_nalgebra(m: &DMatrix<C64>) -> ComplexMatrix {
    ComplexMatrix::from_fn(m.nrows(), m.ncols(), |r, c| m[(r, c)])
}

/// Outcome of a positivity check.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PsdReport {
    pub hermitian: bool,
    /// Smallest eigenvalue of the Hermitian part `(A + A*)/2`.
    pub min_eig: f64,
    pub psd: bool,
}

/// Eigenvalues of the Hermitian part of `a`, ascending.
pub fn hermitian_eigenvalues(a: &ComplexMatrix) -> Result<Vec<f64>> {
    a.require_square()?;
    let h = to_nalgebra(&a.hermitian_part());
    let eig = h.symmetric_eigenvalues();
    let mut vals: Vec<f64> = eig.iter().copied().collect();
    vals.sort_by(f64::total_cmp);
    Ok(vals)
}

pub fn psd_report(a: &ComplexMatrix, tol: f64) -> Result<PsdReport> {
    a.require_square()?;
    let hermitian = a.is_hermitian(tol);
    let min_eig = hermitian_eigenvalues(a)?[0];
    Ok(PsdReport {
        hermitian,
        min_eig,
        psd: hermitian && min_eig >= -tol,
    })
}

/// All eigenvalues of a general square matrix (complex Schur form).
pub fn eigenvalues(a: &ComplexMatrix) -> Result<Vec<C64>> {
    let n = a.require_square()?;
    if n == 1 {
        return Ok(vec![a.get(0, 0)]);
    }
    let schur = to_nalgebra(a)
        .try_schur(1e-15, 10_000)
        .ok_or_else(|| Error::Numerical("Schur iteration did not converge".into()))?;
    let (_, t) = schur.unpack();
    Ok((0..n).map(|k| t[(k, k)]).collect())
}

/// Singular values, descending.
pub fn singular_values(a: &ComplexMatrix) -> Vec<f64> {
    let mut s: Vec<f64> = to_nalgebra(a).singular_values().iter().copied().collect();
    s.sort_by(|x, y| y.total_cmp(x));
    s
}

/// Dimension of the eigenvalue-1 eigenspace of `a`: the nullity of `a − I`,
/// counted as singular values of `a − I` not exceeding `tol`.
pub fn fixed_space_dim(a: &ComplexMatrix, tol: f64) -> Result<usize> {
    let n = a.require_square()?;
    let shifted = a - &ComplexMatrix::identity(n);
    Ok(singular_values(&shifted).iter().filter(|&&s| s <= tol).count())
}

/// Greedy multiset comparison of two spectra. Returns the largest distance
/// between matched eigenvalues, or infinity when the lengths differ.
pub fn spectrum_distance(a: &[C64], b: &[C64]) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    let mut used = vec![false; b.len()];
    let mut worst: f64 = 0.0;
    for x in a {
        let (idx, dist) = b
            .iter()
            .enumerate()
            .filter(|(i, _)| !used[*i])
            .map(|(i, y)| (i, (x - y).norm()))
            .min_by(|p, q| p.1.total_cmp(&q.1))
            .expect("lengths agree");
        used[idx] = true;
        worst = worst.max(dist);
    }
    worst
}
