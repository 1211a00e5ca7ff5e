// SPDX-License-Identifier: Apache-2.0

//! Named nearest-neighbour walks, given as `(L, R)` pairs.

use super::cases::CaseParams;
use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;
use crate::pq::Params;

pub const WALK_GALLERY_NAMES: [&str; 7] = [
    "classical_symmetric",
    "classical",
    "case1",
    "case2",
    "case3",
    "amplitude_damping",
    "hadamard_split",
];

fn open_unit(name: &str, v: f64) -> Result<f64> {
    if v > 0.0 && v < 1.0 {
        Ok(v)
    } else {
        Err(Error::ParameterOutOfRange {
            name: name.to_string(),
            value: v,
            range: "(0, 1)",
        })
    }
}

/// `L = R = I/√2`.
pub fn classical_symmetric() -> (ComplexMatrix, ComplexMatrix) {
    classical(0.5).expect("½ is in range")
}

/// `L = √p I`, `R = √(1−p) I`: the classical walk stepping left with
/// probability `p`.
pub fn classical(p: f64) -> Result<(ComplexMatrix, ComplexMatrix)> {
    let p = open_unit("p", p)?;
    let id = ComplexMatrix::identity(2);
    Ok((id.scale_re(p.sqrt()), id.scale_re((1.0 - p).sqrt())))
}

/// `L = V₁ = diag(1, √(1−p))`, `R = V₂ = √p |0⟩⟨1|`.
pub fn amplitude_damping(p: f64) -> Result<(ComplexMatrix, ComplexMatrix)> {
    let p = open_unit("p", p)?;
    Ok((
        ComplexMatrix::diag_real(&[1.0, (1.0 - p).sqrt()]),
        ComplexMatrix::from_real_rows(&[[0.0, p.sqrt()], [0.0, 0.0]]),
    ))
}

/// The non-PQ pair `R = B = [[1, 1], [0, 0]]/√2`, `L = C = [[0, 0], [1, −1]]/√2`,
/// with `C*B = 0` and `B + C` the Hadamard matrix.
pub fn hadamard_split() -> (ComplexMatrix, ComplexMatrix) {
    let h = 0.5f64.sqrt();
    let b = ComplexMatrix::from_real_rows(&[[h, h], [0.0, 0.0]]);
    let c = ComplexMatrix::from_real_rows(&[[0.0, 0.0], [h, -h]]);
    (c, b)
}

/// Looks up a walk by name. `classical` and `amplitude_damping` read `p`;
/// the case walks read `x` and `y` (Case 1: `|l11|²`, `|l22|²`), with `y`
/// defaulting to `x` for Cases 1 and 3 and to `1 − x` for Case 2.
pub fn walk_gallery(name: &str, params: &Params) -> Result<(ComplexMatrix, ComplexMatrix)> {
    let get = |key: &'static str| {
        params
            .get(key)
            .copied()
            .ok_or_else(|| Error::MissingParameter(format!("{name} needs `{key}`")))
    };
    match name {
        "classical_symmetric" => Ok(classical_symmetric()),
        "classical" => classical(get("p")?),
        "amplitude_damping" => amplitude_damping(get("p")?),
        "hadamard_split" => Ok(hadamard_split()),
        "case1" | "case2" | "case3" => {
            let x = get("x")?;
            let case = name.as_bytes()[4] - b'0';
            let y = params
                .get("y")
                .copied()
                .unwrap_or(if case == 2 { 1.0 - x } else { x });
            CaseParams::from_number(case, x, y)?.matrices()
        }
        other => Err(Error::UnknownGallery(other.to_string())),
    }
}
