// SPDX-License-Identifier: Apache-2.0

use super::eigen::psd_report;
use super::matrix::{ComplexMatrix, DEFAULT_TOL};
use crate::error::{Error, Result};

/// A Hermitian, positive semidefinite, unit-trace matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    mat: ComplexMatrix,
    tol: f64,
}

impl DensityMatrix {
    pub fn new(mat: ComplexMatrix, tol: f64) -> Result<Self> {
        let report = psd_report(&mat, tol)?;
        if !report.hermitian {
            return Err(Error::InvalidState {
                what: "density matrix (not Hermitian)",
                residual: mat.max_abs_diff(&mat.adjoint()),
            });
        }
        if !report.psd {
            return Err(Error::InvalidState {
                what: "density matrix (not positive)",
                residual: -report.min_eig,
            });
        }
        let tr = mat.trace();
        let defect = (tr - 1.0).norm();
        if defect > tol {
            return Err(Error::InvalidState {
                what: "density matrix (trace != 1)",
                residual: defect,
            });
        }
        Ok(Self { mat, tol })
    }

    /// Diagonal density `diag(p_1, …, p_d)`.
    pub fn diagonal(probs: &[f64]) -> Result<Self> {
        Self::new(ComplexMatrix::diag_real(probs), DEFAULT_TOL)
    }

    pub fn maximally_mixed(d: usize) -> Self {
        Self {
            mat: ComplexMatrix::identity(d).scale_re(1.0 / d as f64),
            tol: DEFAULT_TOL,
        }
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.mat
    }

    pub fn dim(&self) -> usize {
        self.mat.rows()
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.mat
    }
}

/// A Hermitian positive semidefinite matrix whose trace is its `mass`.
/// Used for sub-normalised site blocks.
#[derive(Debug, Clone, PartialEq)]
pub struct PositiveOperator {
    mat: ComplexMatrix,
    mass: f64,
}

impl PositiveOperator {
    pub fn new(mat: ComplexMatrix, tol: f64) -> Result<Self> {
        let report = psd_report(&mat, tol)?;
        if !report.psd {
            return Err(Error::InvalidState {
                what: "positive operator",
                residual: if report.hermitian {
                    -report.min_eig
                } else {
                    mat.max_abs_diff(&mat.adjoint())
                },
            });
        }
        let mass = mat.trace().re;
        Ok(Self { mat, mass })
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.mat
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn dim(&self) -> usize {
        self.mat.rows()
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.mat
    }
}

impl From<DensityMatrix> for PositiveOperator {
    fn from(d: DensityMatrix) -> Self {
        Self {
            mass: d.mat.trace().re,
            mat: d.mat,
        }
    }
}
