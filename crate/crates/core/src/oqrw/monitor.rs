// SPDX-License-Identifier: Apache-2.0

//! Monitored evolution: after every step the block at the monitored site is
//! recorded and removed.

use std::collections::BTreeMap;

use serde::Serialize;

use super::walk::{step, Site, WalkSpec, WalkState};
use crate::error::{Error, Result};
use crate::linalg::DensityMatrix;

/// Surviving and removed mass of a monitored run. All vectors are indexed by
/// the step `n = 0..=n_max`, with the initial values at `n = 0`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReturnSeries {
    /// `S_n`: mass away from the monitored site after step `n`.
    pub per_step_mass: Vec<f64>,
    /// Total mass removed up to and including step `n`.
    pub cumulative_return: Vec<f64>,
    /// Mass removed at step `n` (the first-arrival probability at `n`).
    pub removed_per_step: Vec<f64>,
    /// Removed mass at the even steps `2k`, keyed by `k`.
    pub first_return: BTreeMap<u64, f64>,
}

impl ReturnSeries {
    pub fn steps(&self) -> usize {
        self.per_step_mass.len() - 1
    }

    /// `1 − S_{n_max}`.
    pub fn return_estimate(&self) -> f64 {
        1.0 - self.per_step_mass.last().copied().unwrap_or(1.0)
    }

    /// Largest `|S_n + cumulative(n) − S_0|`.
    pub fn ledger_defect(&self) -> f64 {
        let s0 = self.per_step_mass[0];
        self.per_step_mass
            .iter()
            .zip(&self.cumulative_return)
            .map(|(s, c)| (s + c - s0).abs())
            .fold(0.0, f64::max)
    }
}

/// Runs `n_max` monitored steps from `ρ0` placed at `origin`.
pub fn monitored_run(w: &WalkSpec, rho0: &DensityMatrix, origin: Site, n_max: u64) -> Result<ReturnSeries> {
    if rho0.dim() != w.dim() {
        return Err(Error::DimensionMismatch {
            context: "initial state",
            expected: w.dim(),
            found: rho0.dim(),
        });
    }
    monitored_run_from(w, WalkState::localized(origin, rho0), origin, n_max)
}

/// Monitored run from an arbitrary initial state; `monitor` is the site
/// whose block is removed after every step.
pub fn monitored_run_from(w: &WalkSpec, start: WalkState, monitor: Site, n_max: u64) -> Result<ReturnSeries> {
    if n_max == 0 {
        return Err(Error::ParameterOutOfRange {
            name: "n_max".into(),
            value: 0.0,
            range: "n_max >= 1",
        });
    }
    let (min, max) = start.support().unwrap_or((monitor, monitor));
    w.require_room((min.min(monitor), max.max(monitor)), n_max)?;
    let s0 = start.mass();
    let mut state = start;
    let mut per_step_mass = vec![s0];
    let mut cumulative_return = vec![0.0];
    let mut removed_per_step = vec![0.0];
    let mut first_return = BTreeMap::new();
    let mut cumulative = 0.0;
    for n in 1..=n_max {
        state = step(w, &state)?;
        let removed = state.remove(monitor).map_or(0.0, |b| b.trace().re);
        cumulative += removed;
        per_step_mass.push(state.mass());
        cumulative_return.push(cumulative);
        removed_per_step.push(removed);
        if n % 2 == 0 {
            first_return.insert(n / 2, removed);
        }
    }
    Ok(ReturnSeries {
        per_step_mass,
        cumulative_return,
        removed_per_step,
        first_return,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::ComplexMatrix;
    use crate::oqrw::paths::alpha_f64;

    fn symmetric(window: i64) -> WalkSpec {
        let h = ComplexMatrix::identity(2).scale_re(0.5f64.sqrt());
        WalkSpec::nearest_neighbour(&h, &h, (-window, window), 1e-10).unwrap()
    }

    #[test]
    fn classical_first_returns() {
        let w = symmetric(30);
        let rho = DensityMatrix::maximally_mixed(2);
        let run = monitored_run(&w, &rho, 0, 20).unwrap();
        assert!((run.per_step_mass[1] - 1.0).abs() < 1e-15);
        let mut partial = 0.0;
        for k in 1..=10u64 {
            let want = alpha_f64(k) * 0.25f64.powi(k as i32);
            partial += want;
            assert!((run.first_return[&k] - want).abs() < 1e-14);
            assert!((run.cumulative_return[2 * k as usize] - partial).abs() < 1e-13);
        }
        assert!(run.ledger_defect() < 1e-12);
        for pair in run.per_step_mass.windows(2) {
            assert!(pair[1] <= pair[0] + 1e-15);
        }
    }

    #[test]
    fn window_must_exceed_reach() {
        let w = symmetric(10);
        let rho = DensityMatrix::maximally_mixed(2);
        assert!(monitored_run(&w, &rho, 0, 9).is_ok());
        assert!(matches!(
            monitored_run(&w, &rho, 0, 10),
            Err(Error::WindowTooSmall { .. })
        ));
        assert!(monitored_run(&w, &rho, 0, 0).is_err());
        let w1 = symmetric(0);
        assert!(monitored_run(&w1, &rho, 0, 1).is_err());
    }

    #[test]
    fn amplitude_damping_survival() {
        let p: f64 = 0.5;
        let l = ComplexMatrix::diag_real(&[1.0, (1.0 - p).sqrt()]);
        let r = ComplexMatrix::from_real_rows(&[[0.0, p.sqrt()], [0.0, 0.0]]);
        let w = WalkSpec::nearest_neighbour(&l, &r, (-62, 62), 1e-10).unwrap();
        let rho = DensityMatrix::diagonal(&[0.3, 0.7]).unwrap();
        let run = monitored_run(&w, &rho, 0, 60).unwrap();
        // survival after n steps, summed path by path
        for n in 2..=60usize {
            let tail: f64 = (2..n).map(|k| p * (1.0 - p).powi(k as i32) * 0.7).sum();
            let want = 0.3 + (1.0 - p).powi(n as i32) * 0.7 + tail;
            assert!((run.per_step_mass[n] - want).abs() < 1e-12, "n={n}");
        }
    }
}
