// SPDX-License-Identifier: Apache-2.0

//! PQ-matrices and PQ-channels.

pub mod gallery;
mod kraus;
mod pattern;
pub mod reference;
mod spectral;

pub use gallery::{gallery, Params, GALLERY_NAMES};
pub use kraus::{
    diag_antidiag_mixture, pq_kraus_split_qubit, random_unital_qubit_pq_channel, unitary_mixture_qubit,
    verify_pq_kraus_candidate, CandidateReport, MixturePhases,
};
pub use pattern::{
    class_of, coherence_indices, inner_dim, is_pq_matrix, pq_pattern, split_pattern, split_pq_matrices, MatrixClass,
    PqDecomposition, PqPattern,
};
pub use spectral::{classify_spectral, semigroup_point, split_spectrum, Mixing, SpectralClass, UNIT_EIGEN_TOL};
