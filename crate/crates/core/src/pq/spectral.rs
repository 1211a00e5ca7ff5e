// SPDX-License-Identifier: Apache-2.0

//! Semigroups generated by unital PQ-channels and the spectral split into
//! classical and quantum parts.

use serde::Serialize;

use super::pattern::{pq_pattern, PqDecomposition};
use crate::channel::{compose, KrausChannel};
use crate::error::{Error, Result};
use crate::linalg::{eigenvalues, fixed_space_dim, mat_exp, ComplexMatrix, C64};

/// `|λ − 1|` at or below this counts as a unit eigenvalue.
pub const UNIT_EIGEN_TOL: f64 = 1e-8;

/// `exp(t([Φ] − I))` for a unital PQ-channel.
pub fn semigroup_point(ch: &KrausChannel, t: f64, tol: f64) -> Result<ComplexMatrix> {
    if !(t >= 0.0) {
        return Err(Error::ParameterOutOfRange {
            name: "t".into(),
            value: t,
            range: "[0, inf)",
        });
    }
    if !ch.is_unital(tol) {
        return Err(Error::Unsupported("semigroup point needs a unital channel".into()));
    }
    let rep = ch.matrix_rep();
    if pq_pattern(&rep, tol)?.decomposition().is_none() {
        return Err(Error::Unsupported("semigroup point needs a PQ-channel".into()));
    }
    let gen = &rep - &ComplexMatrix::identity(rep.rows());
    mat_exp(&gen, t)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Mixing {
    Mixing,
    NotMixing,
    /// Outside unital qubit channels with real quantum part.
    Undetermined,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectralClass {
    /// Dimension of the eigenvalue-1 eigenspace of `P`.
    pub p_fixed_dim: usize,
    /// Whether the quantum part has eigenvalue 1.
    pub q_has_fixed: bool,
    pub ergodic: bool,
    pub mixing: Mixing,
    /// `[Φ]*[Φ] = [Φ][Φ]*` within tolerance.
    pub normal_rep: bool,
}

fn has_unit_eigenvalue(m: &ComplexMatrix) -> Result<bool> {
    Ok(eigenvalues(m)?.iter().any(|l| (l - C64::new(1.0, 0.0)).norm() <= UNIT_EIGEN_TOL))
}

fn ergodic_parts(dec: &PqDecomposition) -> Result<(usize, bool)> {
    let p_fixed_dim = fixed_space_dim(&dec.p_matrix(), UNIT_EIGEN_TOL)?;
    let q_has_fixed = has_unit_eigenvalue(&dec.q_operator())?;
    Ok((p_fixed_dim, q_has_fixed))
}

/// Ergodicity from the classical and quantum spectra; mixing for unital
/// qubit channels with real quantum part via ergodicity of `Φ*Φ`.
pub fn classify_spectral(ch: &KrausChannel, tol: f64) -> Result<SpectralClass> {
    let rep = ch.matrix_rep();
    let dec = pq_pattern(&rep, tol)?.into_result()?;
    let (p_fixed_dim, q_has_fixed) = ergodic_parts(&dec)?;
    let ergodic = p_fixed_dim == 1 && !q_has_fixed;
    let normal_rep = (&rep.adjoint() * &rep).max_abs_diff(&(&rep * &rep.adjoint())) <= tol;
    let real_q = dec.q_blocks.iter().flatten().all(|b| b.as_slice().iter().all(|z| z.im.abs() <= tol));
    let mixing = if ch.dim() == 2 && ch.is_unital(tol) && real_q {
        let gram = compose(&ch.adjoint(), ch)?;
        let gdec = pq_pattern(&gram.matrix_rep(), tol)?.into_result()?;
        let (pf, qf) = ergodic_parts(&gdec)?;
        if pf == 1 && !qf {
            Mixing::Mixing
        } else {
            Mixing::NotMixing
        }
    } else {
        Mixing::Undetermined
    };
    Ok(SpectralClass {
        p_fixed_dim,
        q_has_fixed,
        ergodic,
        mixing,
        normal_rep,
    })
}

/// Eigenvalues of `P` followed by those of the quantum part.
pub fn split_spectrum(dec: &PqDecomposition) -> Result<Vec<C64>> {
    let mut out = eigenvalues(&dec.p_matrix())?;
    out.extend(eigenvalues(&dec.q_operator())?);
    Ok(out)
}
