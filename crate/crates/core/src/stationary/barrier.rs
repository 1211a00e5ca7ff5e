// SPDX-License-Identifier: Apache-2.0

//! Qubit walk on the half-line with a retaining barrier at `0`.

use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;
use crate::oqrw::WalkSpec;

/// `B_0^1 = I`, `B_i^{i−1} = diag(√q11, √q22)`, `B_i^{i+1} = diag(√p11, √p22)`
/// on `[0, window_hi]` with `q_jj = 1 − p_jj`. The right edge is open.
pub fn barrier_walk(p11: f64, p22: f64, window_hi: i64) -> Result<WalkSpec> {
    for (name, p) in [("p11", p11), ("p22", p22)] {
        if !(p > 0.0 && p < 0.5) {
            return Err(Error::ParameterOutOfRange {
                name: name.into(),
                value: p,
                range: "(0, 1/2)",
            });
        }
    }
    if window_hi < 2 {
        return Err(Error::WindowTooSmall {
            lo: 0,
            hi: window_hi,
            reason: "the barrier walk needs at least the sites 0, 1, 2".into(),
        });
    }
    let left = ComplexMatrix::diag_real(&[(1.0 - p11).sqrt(), (1.0 - p22).sqrt()]);
    let right = ComplexMatrix::diag_real(&[p11.sqrt(), p22.sqrt()]);
    let mut transitions = vec![(0, 1, ComplexMatrix::identity(2))];
    for i in 1..window_hi {
        transitions.push((i, i - 1, left.clone()));
        transitions.push((i, i + 1, right.clone()));
    }
    transitions.push((window_hi, window_hi - 1, left));
    WalkSpec::from_transitions(2, (0, window_hi), transitions, 1e-12)
}
