// SPDX-License-Identifier: Apache-2.0

//! Named channels with fixed Kraus matrices.

use std::collections::BTreeMap;

use crate::channel::KrausChannel;
use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, C64, DEFAULT_TOL};

pub type Params = BTreeMap<String, f64>;

pub const GALLERY_NAMES: [&str; 9] = [
    "bit_flip",
    "bit_phase_flip",
    "amplitude_damping",
    "depolarizing",
    "phase_flip",
    "phase_damping",
    "unitary_qubit",
    "landau_streater",
    "cnot2",
];

pub fn pauli_x() -> ComplexMatrix {
    ComplexMatrix::from_real_rows(&[[0.0, 1.0], [1.0, 0.0]])
}

pub fn pauli_y() -> ComplexMatrix {
    ComplexMatrix::from_rows(&[
        vec![C64::new(0.0, 0.0), C64::new(0.0, -1.0)],
        vec![C64::new(0.0, 1.0), C64::new(0.0, 0.0)],
    ])
    .expect("2x2")
}

pub fn pauli_z() -> ComplexMatrix {
    ComplexMatrix::diag_real(&[1.0, -1.0])
}

fn check_open_unit(name: &str, p: f64) -> Result<f64> {
    if p > 0.0 && p < 1.0 {
        Ok(p)
    } else {
        Err(Error::ParameterOutOfRange {
            name: name.to_string(),
            value: p,
            range: "(0, 1)",
        })
    }
}

fn build(kraus: Vec<ComplexMatrix>) -> KrausChannel {
    KrausChannel::new(kraus, DEFAULT_TOL).expect("gallery channels are trace-preserving")
}

pub fn bit_flip(p: f64) -> Result<KrausChannel> {
    let p = check_open_unit("p", p)?;
    Ok(build(vec![
        ComplexMatrix::identity(2).scale_re(p.sqrt()),
        pauli_x().scale_re((1.0 - p).sqrt()),
    ]))
}

pub fn bit_phase_flip(p: f64) -> Result<KrausChannel> {
    let p = check_open_unit("p", p)?;
    Ok(build(vec![
        ComplexMatrix::identity(2).scale_re(p.sqrt()),
        pauli_y().scale_re((1.0 - p).sqrt()),
    ]))
}

pub fn phase_flip(p: f64) -> Result<KrausChannel> {
    let p = check_open_unit("p", p)?;
    Ok(build(vec![
        ComplexMatrix::identity(2).scale_re(p.sqrt()),
        pauli_z().scale_re((1.0 - p).sqrt()),
    ]))
}

pub fn amplitude_damping(p: f64) -> Result<KrausChannel> {
    let p = check_open_unit("p", p)?;
    Ok(build(vec![
        ComplexMatrix::diag_real(&[1.0, (1.0 - p).sqrt()]),
        ComplexMatrix::from_real_rows(&[[0.0, p.sqrt()], [0.0, 0.0]]),
    ]))
}

/// Phase damping with damping parameter `p`: `diag(1, √(1−p))`,
/// `diag(0, √p)`.
pub fn phase_damping(p: f64) -> Result<KrausChannel> {
    let p = check_open_unit("p", p)?;
    Ok(build(vec![
        ComplexMatrix::diag_real(&[1.0, (1.0 - p).sqrt()]),
        ComplexMatrix::diag_real(&[0.0, p.sqrt()]),
    ]))
}

pub fn depolarizing(p: f64) -> Result<KrausChannel> {
    let p = check_open_unit("p", p)?;
    let s = p.sqrt() / 2.0;
    Ok(build(vec![
        ComplexMatrix::identity(2).scale_re((1.0 - 0.75 * p).sqrt()),
        pauli_x().scale_re(s),
        pauli_y().scale_re(s),
        pauli_z().scale_re(s),
    ]))
}

/// The general order-2 unitary
/// `[[e^{iα}cos θ, e^{iγ}sin θ], [−e^{i(β−γ)}sin θ, e^{i(β−α)}cos θ]]`.
pub fn unitary_qubit_matrix(alpha: f64, beta: f64, gamma: f64, theta: f64) -> ComplexMatrix {
    let e = |phi: f64| C64::from_polar(1.0, phi);
    let (s, c) = theta.sin_cos();
    ComplexMatrix::from_rows(&[
        vec![e(alpha) * c, e(gamma) * s],
        vec![-e(beta - gamma) * s, e(beta - alpha) * c],
    ])
    .expect("2x2")
}

pub fn unitary_qubit(alpha: f64, beta: f64, gamma: f64, theta: f64) -> KrausChannel {
    build(vec![unitary_qubit_matrix(alpha, beta, gamma, theta)])
}

fn im(v: f64) -> C64 {
    C64::new(0.0, v)
}

/// Kraus triple of the Landau-Streater channel on `M_3`.
pub fn landau_streater_kraus() -> Vec<ComplexMatrix> {
    let z = C64::new(0.0, 0.0);
    let h = 0.5f64.sqrt();
    let v1 = ComplexMatrix::from_rows(&[vec![z, im(-h), z], vec![im(h), z, z], vec![z, z, z]]).expect("3x3");
    let v2 = ComplexMatrix::from_rows(&[
        vec![z, z, im(-0.5)],
        vec![z, z, im(-0.5)],
        vec![im(0.5), im(0.5), z],
    ])
    .expect("3x3");
    let v3 = ComplexMatrix::from_rows(&[
        vec![z, z, im(0.5)],
        vec![z, z, im(-0.5)],
        vec![im(-0.5), im(0.5), z],
    ])
    .expect("3x3");
    vec![v1, v2, v3]
}

pub fn landau_streater() -> KrausChannel {
    build(landau_streater_kraus())
}

/// `{V₁, V₂¹, V₂², V₃¹, V₃²}`: the Landau-Streater triple with `V₂`, `V₃`
/// each split into two PQ-matrices.
pub fn landau_streater_pq_candidate() -> Vec<ComplexMatrix> {
    let z = C64::new(0.0, 0.0);
    let v1 = landau_streater_kraus().swap_remove(0);
    let m = |rows: [[C64; 3]; 3]| ComplexMatrix::from_rows(&rows.map(|r| r.to_vec())).expect("3x3");
    let v21 = m([[z, z, im(-0.5)], [z, z, z], [im(0.5), z, z]]);
    let v22 = m([[z, z, z], [z, z, im(-0.5)], [z, im(0.5), z]]);
    let v31 = m([[z, z, im(0.5)], [z, z, z], [im(-0.5), z, z]]);
    let v32 = m([[z, z, z], [z, z, im(-0.5)], [z, im(0.5), z]]);
    vec![v1, v21, v22, v31, v32]
}

/// Two-qubit CNOT mixture `C₁ = √p·(CNOT, control on the first qubit)`,
/// `C₂ = √r·(CNOT, control on the second)`, `r = 1 − p`.
pub fn cnot2(p: f64) -> Result<KrausChannel> {
    let p = check_open_unit("p", p)?;
    let c1 = ComplexMatrix::from_real_rows(&[
        [1.0, 0.0, 0.0, 0.0],
        [0.0, 1.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 1.0],
        [0.0, 0.0, 1.0, 0.0],
    ]);
    let c2 = ComplexMatrix::from_real_rows(&[
        [1.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 1.0],
        [0.0, 0.0, 1.0, 0.0],
        [0.0, 1.0, 0.0, 0.0],
    ]);
    Ok(build(vec![c1.scale_re(p.sqrt()), c2.scale_re((1.0 - p).sqrt())]))
}

fn param(params: &Params, key: &str) -> Result<f64> {
    params.get(key).copied().ok_or_else(|| Error::MissingParameter(key.to_string()))
}

/// Looks up a gallery channel by name. Probability-parametrised channels
/// read `p`; `unitary_qubit` reads `theta` and optionally `alpha`, `beta`,
/// `gamma` (default 0).
pub fn gallery(name: &str, params: &Params) -> Result<KrausChannel> {
    match name {
        "bit_flip" => bit_flip(param(params, "p")?),
        "bit_phase_flip" => bit_phase_flip(param(params, "p")?),
        "amplitude_damping" => amplitude_damping(param(params, "p")?),
        "depolarizing" => depolarizing(param(params, "p")?),
        "phase_flip" => phase_flip(param(params, "p")?),
        "phase_damping" => phase_damping(param(params, "p")?),
        "cnot2" => cnot2(param(params, "p")?),
        "landau_streater" => Ok(landau_streater()),
        "unitary_qubit" => {
            let get = |k: &str| params.get(k).copied().unwrap_or(0.0);
            Ok(unitary_qubit(get("alpha"), get("beta"), get("gamma"), param(params, "theta")?))
        }
        other => Err(Error::UnknownGallery(other.to_string())),
    }
}
