// SPDX-License-Identifier: Apache-2.0

//! Stationary operators and the first-return operators `S^T_{ρx,j}`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{psd_report, ComplexMatrix};
use crate::oqrw::{step, Site, WalkSpec, WalkState};

/// A block-diagonal operator `∑_j λ_j ⊗ |j⟩⟨j|` with PSD blocks.
#[derive(Debug, Clone, PartialEq)]
pub struct StationaryOperator {
    blocks: BTreeMap<Site, ComplexMatrix>,
    normalized: bool,
}

impl StationaryOperator {
    /// Checks that every block is square of a common size and PSD within
    /// `tol`. All-zero blocks are dropped.
    pub fn new(blocks: BTreeMap<Site, ComplexMatrix>, tol: f64) -> Result<Self> {
        let mut dim = None;
        for b in blocks.values() {
            let d = b.require_square()?;
            if *dim.get_or_insert(d) != d {
                return Err(Error::DimensionMismatch {
                    context: "stationary operator block",
                    expected: dim.unwrap_or(d),
                    found: d,
                });
            }
            let rep = psd_report(b, tol)?;
            if !rep.psd {
                return Err(Error::InvalidState {
                    what: "stationary operator block is not PSD",
                    residual: rep.min_eig,
                });
            }
        }
        let blocks: BTreeMap<_, _> = blocks.into_iter().filter(|(_, b)| b.max_abs() > 0.0).collect();
        let total: f64 = blocks.values().map(|b| b.trace().re).sum();
        Ok(Self {
            normalized: (total - 1.0).abs() <= tol,
            blocks,
        })
    }

    pub(crate) fn from_state(state: WalkState) -> Self {
        let blocks = state.blocks().clone();
        let total: f64 = blocks.values().map(|b| b.trace().re).sum();
        Self {
            normalized: (total - 1.0).abs() <= 1e-12,
            blocks,
        }
    }

    pub fn blocks(&self) -> &BTreeMap<Site, ComplexMatrix> {
        &self.blocks
    }

    pub fn block(&self, site: Site) -> Option<&ComplexMatrix> {
        self.blocks.get(&site)
    }

    pub fn trace_at(&self, site: Site) -> f64 {
        self.blocks.get(&site).map_or(0.0, |b| b.trace().re)
    }

    pub fn trace_sum(&self) -> f64 {
        self.blocks.values().map(|b| b.trace().re).sum()
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    /// Divides every block by the total trace.
    pub fn normalize(&self) -> Result<Self> {
        let t = self.trace_sum();
        if !(t > 0.0) {
            return Err(Error::InvalidState {
                what: "cannot normalize an operator with zero trace",
                residual: t,
            });
        }
        Ok(Self {
            blocks: self.blocks.iter().map(|(&j, b)| (j, b.scale_re(1.0 / t))).collect(),
            normalized: true,
        })
    }

    pub fn to_state(&self) -> WalkState {
        let mut s = WalkState::empty();
        for (&j, b) in &self.blocks {
            s.insert(j, b.clone());
        }
        s
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StationarityReport {
    pub stationary: bool,
    /// `max_i ‖∑_j B_j^i λ_j B_j^{i*} − λ_i‖_max`.
    pub max_residual: f64,
}

/// Compares one application of the walk with the operator itself.
pub fn is_stationary(w: &WalkSpec, op: &StationaryOperator, tol: f64) -> Result<StationarityReport> {
    check_dim(w, op.blocks.values())?;
    let next = step(w, &op.to_state())?;
    let zero = ComplexMatrix::zeros(w.dim(), w.dim());
    let mut max_residual: f64 = 0.0;
    for site in next.blocks().keys().chain(op.blocks.keys()) {
        let a = next.get(*site).unwrap_or(&zero);
        let b = op.blocks.get(site).unwrap_or(&zero);
        max_residual = max_residual.max(a.max_abs_diff(b));
    }
    Ok(StationarityReport {
        stationary: max_residual <= tol,
        max_residual,
    })
}

fn check_dim<'a>(w: &WalkSpec, blocks: impl IntoIterator<Item = &'a ComplexMatrix>) -> Result<()> {
    for b in blocks {
        if b.rows() != w.dim() || b.cols() != w.dim() {
            return Err(Error::DimensionMismatch {
                context: "operator block vs walk",
                expected: w.dim(),
                found: b.rows(),
            });
        }
    }
    Ok(())
}

/// Runs the `x`-avoiding recursion: `visit(T, arrivals)` sees every block
/// arriving at step `T` (including the one at `x`), after which the block at
/// `x` is removed. Returns the surviving state after `t_max` steps.
pub(crate) fn x_avoiding(
    w: &WalkSpec,
    x: Site,
    seed: &ComplexMatrix,
    t_max: u64,
    mut visit: impl FnMut(u64, &WalkState) -> Result<()>,
) -> Result<WalkState> {
    if t_max == 0 {
        return Err(Error::ParameterOutOfRange {
            name: "t_max".into(),
            value: 0.0,
            range: "t_max >= 1",
        });
    }
    check_dim(w, [seed])?;
    w.require_room((x, x), t_max)?;
    let mut state = WalkState::from_block(x, seed.clone());
    for t in 1..=t_max {
        state = step(w, &state)?;
        visit(t, &state)?;
        state.remove(x);
    }
    Ok(state)
}

/// Every `S^T_{ρx,j}` for `T ≤ horizon`.
#[derive(Debug, Clone, PartialEq)]
pub struct FirstReturnOperators {
    pub origin: Site,
    pub seed: ComplexMatrix,
    pub horizon: u64,
    /// `s[T − 1]` maps `j` to `S^T_{ρx,j}`; zero blocks are omitted.
    pub s: Vec<BTreeMap<Site, ComplexMatrix>>,
    /// Trace of the `x`-avoiding mass left after `horizon` steps.
    pub tail_mass: f64,
}

impl FirstReturnOperators {
    pub fn get(&self, t: u64, j: Site) -> Option<&ComplexMatrix> {
        self.s.get(usize::try_from(t).ok()?.checked_sub(1)?)?.get(&j)
    }

    /// `tr S^T_{ρx,x}` for `T = 1..=horizon`.
    pub fn return_traces(&self) -> Vec<f64> {
        self.s
            .iter()
            .map(|m| m.get(&self.origin).map_or(0.0, |b| b.trace().re))
            .collect()
    }
}

pub fn first_return_operators(w: &WalkSpec, x: Site, rho_x: &ComplexMatrix, t_max: u64) -> Result<FirstReturnOperators> {
    let mut s = Vec::new();
    let tail = x_avoiding(w, x, rho_x, t_max, |_, arrivals| {
        s.push(arrivals.blocks().clone());
        Ok(())
    })?;
    Ok(FirstReturnOperators {
        origin: x,
        seed: rho_x.clone(),
        horizon: t_max,
        s,
        tail_mass: tail.mass(),
    })
}

/// `ρ_st(j) = ∑_{T≤t_max} S^T_{ρx,j}` together with the per-step diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub struct RhoSt {
    pub operator: StationaryOperator,
    /// `∑_j tr S^T_{ρx,j}` for `T = 1..=t_max`.
    pub arrivals_per_step: Vec<f64>,
    /// `tr S^T_{ρx,x}` for `T = 1..=t_max`.
    pub returns_per_step: Vec<f64>,
    /// `∑_{T≤t_max} S^T_{ρx,x}`.
    pub returned: ComplexMatrix,
    /// `x`-avoiding mass after each step `T = 1..=t_max`.
    pub tail_per_step: Vec<f64>,
    pub tail_mass: f64,
}

impl RhoSt {
    pub fn site_traces(&self) -> Vec<(Site, f64)> {
        self.operator.blocks.iter().map(|(&j, b)| (j, b.trace().re)).collect()
    }

    pub fn trace_sum(&self) -> f64 {
        self.operator.trace_sum()
    }
}

pub fn rho_st(w: &WalkSpec, x: Site, rho_x: &ComplexMatrix, t_max: u64) -> Result<RhoSt> {
    let mut acc = WalkState::empty();
    let mut arrivals_per_step = Vec::with_capacity(t_max as usize);
    let mut returns_per_step = Vec::with_capacity(t_max as usize);
    let mut tail_per_step = Vec::with_capacity(t_max as usize);
    x_avoiding(w, x, rho_x, t_max, |_, arrivals| {
        let mut mass = 0.0;
        for (&j, b) in arrivals.blocks() {
            acc.add_to(j, b);
            mass += b.trace().re;
        }
        let ret = arrivals.trace_at(x);
        arrivals_per_step.push(mass);
        returns_per_step.push(ret);
        tail_per_step.push(mass - ret);
        Ok(())
    })?;
    let returned = acc
        .get(x)
        .cloned()
        .unwrap_or_else(|| ComplexMatrix::zeros(w.dim(), w.dim()));
    let tail_mass = tail_per_step.last().copied().unwrap_or(0.0);
    Ok(RhoSt {
        operator: StationaryOperator::from_state(acc),
        arrivals_per_step,
        returns_per_step,
        returned,
        tail_per_step,
        tail_mass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::DensityMatrix;
    use crate::oqrw::{monitored_run, walk_gallery};
    use crate::pq::Params;
    use crate::random::{random_density, seeded_rng};

    /// Walk on `[0, n]` whose interior moves left with amplitude `√a` and
    /// right with `√(1−a)`, reflecting at both ends.
    fn reflecting(a: f64, n: i64) -> WalkSpec {
        let id = ComplexMatrix::identity(2);
        let mut t = vec![(0, 1, id.clone()), (n, n - 1, id.clone())];
        for j in 1..n {
            t.push((j, j - 1, id.scale_re(a.sqrt())));
            t.push((j, j + 1, id.scale_re((1.0 - a).sqrt())));
        }
        WalkSpec::from_transitions(2, (0, n), t, 1e-12).unwrap()
    }

    /// Stationary law of the induced chain by power iteration on the
    /// transition matrix.
    fn classical_pi(a: f64, n: usize) -> Vec<f64> {
        let mut p = vec![vec![0.0; n + 1]; n + 1];
        p[0][1] = 1.0;
        p[n][n - 1] = 1.0;
        for j in 1..n {
            p[j][j - 1] = a;
            p[j][j + 1] = 1.0 - a;
        }
        let mut pi = vec![1.0 / (n + 1) as f64; n + 1];
        for _ in 0..20000 {
            let mut next = vec![0.0; n + 1];
            for i in 0..=n {
                for j in 0..=n {
                    next[j] += pi[i] * p[i][j];
                }
            }
            // average consecutive iterates to damp the period-2 oscillation
            pi = pi.iter().zip(&next).map(|(u, v)| 0.5 * (u + v)).collect();
        }
        pi
    }

    #[test]
    fn classical_stationary_distribution() {
        let n = 8;
        let w = reflecting(0.65, n);
        let pi = classical_pi(0.65, n as usize);
        let blocks = (0..=n)
            .map(|j| (j, ComplexMatrix::identity(2).scale_re(pi[j as usize] / 2.0)))
            .collect();
        let op = StationaryOperator::new(blocks, 1e-12).unwrap();
        assert!(op.is_normalized());
        let rep = is_stationary(&w, &op, 1e-9).unwrap();
        assert!(rep.stationary, "{}", rep.max_residual);
    }

    #[test]
    fn random_blocks_are_not_stationary() {
        let w = reflecting(0.5, 5);
        let mut rng = seeded_rng(3);
        let blocks = (0..=5).map(|j| (j, random_density(&mut rng, 2).scale_re(1.0 / 6.0))).collect();
        let op = StationaryOperator::new(blocks, 1e-12).unwrap();
        assert!(!is_stationary(&w, &op, 1e-8).unwrap().stationary);
        let bad = [(0, ComplexMatrix::identity(3))].into_iter().collect();
        let op = StationaryOperator::new(bad, 1e-12).unwrap();
        assert!(is_stationary(&w, &op, 1e-8).is_err());
    }

    #[test]
    fn first_step_and_parity() {
        let (l, r) = walk_gallery("case1", &[("x".to_string(), 0.3)].into_iter().collect::<Params>()).unwrap();
        let w = WalkSpec::nearest_neighbour(&l, &r, (-20, 20), 1e-12).unwrap();
        let rho = random_density(&mut seeded_rng(5), 2);
        let fr = first_return_operators(&w, 0, &rho, 12).unwrap();
        assert!(fr.get(1, -1).unwrap().approx_eq(&l.sandwich(&rho), 0.0));
        assert!(fr.get(1, 1).unwrap().approx_eq(&r.sandwich(&rho), 0.0));
        for t in (1..=12).step_by(2) {
            assert!(fr.get(t, 0).is_none());
        }
        assert!(fr.get(0, 0).is_none() && fr.get(13, 0).is_none());
    }

    #[test]
    fn returns_agree_with_monitored_run() {
        let p = [("p".to_string(), 0.4), ("x".to_string(), 0.3)].into_iter().collect::<Params>();
        for name in ["classical_symmetric", "case2", "amplitude_damping", "hadamard_split"] {
            let (l, r) = walk_gallery(name, &p).unwrap();
            let w = WalkSpec::nearest_neighbour(&l, &r, (-30, 30), 1e-12).unwrap();
            let rho = random_density(&mut seeded_rng(8), 2);
            let fr = first_return_operators(&w, 0, &rho, 24).unwrap();
            let run = monitored_run(&w, &DensityMatrix::new(rho.clone(), 1e-12).unwrap(), 0, 24).unwrap();
            for (t, got) in fr.return_traces().iter().enumerate() {
                assert!((got - run.removed_per_step[t + 1]).abs() < 1e-10, "{name} T={}", t + 1);
            }
            assert!((fr.tail_mass - run.per_step_mass[24]).abs() < 1e-10);
        }
    }

    #[test]
    fn rho_st_with_one_step() {
        let (l, r) = walk_gallery("classical_symmetric", &Params::new()).unwrap();
        let w = WalkSpec::nearest_neighbour(&l, &r, (-5, 5), 1e-12).unwrap();
        let rho = DensityMatrix::maximally_mixed(2).into_matrix();
        let st = rho_st(&w, 0, &rho, 1).unwrap();
        assert!(st.operator.block(-1).unwrap().approx_eq(&l.sandwich(&rho), 0.0));
        assert!(st.operator.block(1).unwrap().approx_eq(&r.sandwich(&rho), 0.0));
        assert_eq!(st.operator.blocks().len(), 2);
        assert!(rho_st(&w, 0, &rho, 0).is_err());
        assert!(matches!(rho_st(&w, 0, &rho, 5), Err(Error::WindowTooSmall { .. })));
    }
}
