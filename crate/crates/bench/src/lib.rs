// SPDX-License-Identifier: Apache-2.0

//! Fixed workloads shared by the benchmarks.

use pqwalk::oqrw::walk_gallery;
use pqwalk::pq::{gallery, Params};
use pqwalk::random::{random_density, seeded_rng};
use pqwalk::stationary::barrier_walk;
use pqwalk::{ComplexMatrix, DensityMatrix, KrausChannel, WalkSpec};

fn params(kv: &[(&str, f64)]) -> Params {
    kv.iter().map(|(k, v)| (k.to_string(), *v)).collect()
}

/// The two-qubit CNOT channel at `p = 0.7`.
pub fn cnot_channel() -> KrausChannel {
    gallery("cnot2", &params(&[("p", 0.7)])).expect("gallery entry")
}

/// `(L, R, ρ0)` for a named walk with `p = x = 0.3`, `y = 0.6` and a seeded
/// random initial state.
pub fn walk_pair(name: &str) -> (ComplexMatrix, ComplexMatrix, ComplexMatrix) {
    let (l, r) = walk_gallery(name, &params(&[("p", 0.3), ("x", 0.3), ("y", 0.6)])).expect("gallery walk");
    (l, r, random_density(&mut seeded_rng(11), 2))
}

/// A nearest-neighbour walk with room for `steps` steps from the origin.
pub fn windowed_walk(name: &str, steps: u64) -> (WalkSpec, DensityMatrix) {
    let (l, r, rho) = walk_pair(name);
    let edge = steps as i64 + 1;
    let w = WalkSpec::nearest_neighbour(&l, &r, (-edge, edge), 1e-12).expect("valid walk");
    (w, DensityMatrix::new(rho, 1e-12).expect("density"))
}

/// The barrier walk at `p11 = p22 = 0.3` with room for `horizon` steps.
pub fn barrier(horizon: u64) -> WalkSpec {
    barrier_walk(0.3, 0.3, horizon as i64 + 2).expect("valid barrier")
}
