// SPDX-License-Identifier: Apache-2.0

//! Dense complex linear algebra: the carrier type for states, Kraus
//! operators and matrix representations.

mod eigen;
mod expm;
mod matrix;
mod state;

pub use eigen::{
    eigenvalues, fixed_space_dim, hermitian_eigenvalues, psd_report, singular_values, spectrum_distance, PsdReport,
};
pub use expm::mat_exp;
pub use matrix::{kron, unvec, vec, ComplexMatrix, C64, DEFAULT_TOL, I, ONE, ZERO};
pub use state::{DensityMatrix, PositiveOperator};
