// SPDX-License-Identifier: Apache-2.0

//! Truncated positive-recurrence evidence and the operator inequality
//! `ρ_{st,λ_k}(j) ≤ λ(j)`.

use serde::Serialize;

use super::operators::{is_stationary, rho_st, x_avoiding, StationaryOperator};
use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigenvalues, ComplexMatrix};
use crate::oqrw::{Site, WalkSpec, WalkState};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RecurrenceVerdict {
    PositiveRecurrentEvidence,
    Inconclusive,
    Fails,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PositiveRecurrenceReport {
    pub horizon: u64,
    /// `∑_j tr ρ_st(j)` truncated at the horizon.
    pub trace_sum: f64,
    /// Growth of `trace_sum` over the last tenth of the horizon.
    pub last_decade_increment: f64,
    /// `last_decade_increment ≤ tol · horizon`.
    pub trace_sum_converged: bool,
    /// `‖∑_T S^T_{ρx,x} − ρx‖_max`.
    pub fixed_point_residual: f64,
    /// `∑_T tr S^T_{ρx,x}`.
    pub return_mass: f64,
    /// `x`-avoiding mass left at the horizon.
    pub tail_mass: f64,
    pub verdict: RecurrenceVerdict,
}

/// Evidence for positive recurrence of `x` seeded with `ρx`.
///
/// * `PositiveRecurrentEvidence`: the trace sum has stopped growing and the
///   returned operator equals `ρx` within `tol`.
/// * `Fails`: the trace sum converged but the returned operator differs from
///   `ρx`, or the trace sum keeps growing while the surviving mass has
///   stalled (it lost less than 1% over the last tenth of the horizon), which
///   is what a transient site looks like.
/// * `Inconclusive`: the trace sum keeps growing and the surviving mass is
///   still decaying, as for a null-recurrent site.
pub fn positive_recurrence_check(
    w: &WalkSpec,
    x: Site,
    rho_x: &ComplexMatrix,
    t_max: u64,
    tol: f64,
) -> Result<PositiveRecurrenceReport> {
    let st = rho_st(w, x, rho_x, t_max)?;
    let n = st.arrivals_per_step.len();
    let start = n - n.div_ceil(10);
    let last_decade_increment: f64 = st.arrivals_per_step[start..].iter().sum();
    let trace_sum_converged = last_decade_increment <= tol * t_max as f64;
    let fixed_point_residual = st.returned.max_abs_diff(rho_x);
    let tail_then = if start == 0 {
        rho_x.trace().re
    } else {
        st.tail_per_step[start - 1]
    };
    let stalled = st.tail_mass > tol && st.tail_mass >= 0.99 * tail_then;
    let verdict = match (trace_sum_converged, fixed_point_residual <= tol) {
        (true, true) => RecurrenceVerdict::PositiveRecurrentEvidence,
        (true, false) => RecurrenceVerdict::Fails,
        (false, _) if stalled => RecurrenceVerdict::Fails,
        (false, _) => RecurrenceVerdict::Inconclusive,
    };
    Ok(PositiveRecurrenceReport {
        horizon: t_max,
        trace_sum: st.trace_sum(),
        last_decade_increment,
        trace_sum_converged,
        fixed_point_residual,
        return_mass: st.returns_per_step.iter().sum(),
        tail_mass: st.tail_mass,
        verdict,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DominanceReport {
    /// `λ_j − ∑_{T≤t_max} S^T_{λ_k,j}` is PSD within `tol` at every `j`.
    pub holds: bool,
    /// Smallest eigenvalue of `λ_j − ∑_{T≤t_max} S^T_{λ_k,j}` over `j`.
    pub min_margin: f64,
    /// Smallest eigenvalue of any increment `S^T_{λ_k,j}`.
    pub min_increment: f64,
    pub stationarity_residual: f64,
}

/// Checks `ρ_{st,λ_k}(j) ≤ λ(j)` for a stationary `λ`, truncating the
/// first-return sum at `t_max`.
pub fn dominance_check(
    w: &WalkSpec,
    lambda: &StationaryOperator,
    k: Site,
    t_max: u64,
    tol: f64,
) -> Result<DominanceReport> {
    let st = is_stationary(w, lambda, tol)?;
    if !st.stationary {
        return Err(Error::NotStationary {
            residual: st.max_residual,
        });
    }
    let seed = lambda
        .block(k)
        .cloned()
        .unwrap_or_else(|| ComplexMatrix::zeros(w.dim(), w.dim()));
    let mut acc = WalkState::empty();
    let mut min_increment = f64::INFINITY;
    x_avoiding(w, k, &seed, t_max, |_, arrivals| {
        for (&j, b) in arrivals.blocks() {
            min_increment = min_increment.min(hermitian_eigenvalues(&b.hermitian_part())?[0]);
            acc.add_to(j, b);
        }
        Ok(())
    })?;
    let zero = ComplexMatrix::zeros(w.dim(), w.dim());
    let mut min_margin = f64::INFINITY;
    for site in lambda.blocks().keys().chain(acc.blocks().keys()) {
        let lam = lambda.block(*site).unwrap_or(&zero);
        let part = acc.get(*site).unwrap_or(&zero);
        let diff = (lam - part).hermitian_part();
        min_margin = min_margin.min(hermitian_eigenvalues(&diff)?[0]);
    }
    Ok(DominanceReport {
        holds: min_margin >= -tol && min_increment >= -tol,
        min_margin,
        min_increment: if min_increment.is_finite() { min_increment } else { 0.0 },
        stationarity_residual: st.max_residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oqrw::walk_gallery;
    use crate::pq::Params;
    use crate::stationary::barrier_walk;

    fn nn(name: &str, p: f64, window: i64) -> WalkSpec {
        let params: Params = [("p".to_string(), p)].into_iter().collect();
        let (l, r) = walk_gallery(name, &params).unwrap();
        WalkSpec::nearest_neighbour(&l, &r, (-window, window), 1e-12).unwrap()
    }

    #[test]
    fn barrier_has_evidence() {
        let w = barrier_walk(0.3, 0.2, 402).unwrap();
        let rho = ComplexMatrix::diag_real(&[0.6, 0.4]);
        let rep = positive_recurrence_check(&w, 0, &rho, 400, 1e-8).unwrap();
        assert_eq!(rep.verdict, RecurrenceVerdict::PositiveRecurrentEvidence);
        assert!(rep.trace_sum_converged);
        // expected return time 1 + 1/(q − p) per diagonal component
        let want = 0.6 * (1.0 + 1.0 / 0.4) + 0.4 * (1.0 + 1.0 / 0.6);
        assert!((rep.trace_sum - want).abs() < 1e-9, "{} vs {want}", rep.trace_sum);
    }

    #[test]
    fn symmetric_walk_is_inconclusive() {
        let w = nn("classical_symmetric", 0.5, 402);
        let rho = ComplexMatrix::diag_real(&[0.5, 0.5]);
        let rep = positive_recurrence_check(&w, 0, &rho, 400, 1e-8).unwrap();
        assert!(!rep.trace_sum_converged);
        assert_eq!(rep.verdict, RecurrenceVerdict::Inconclusive);
    }

    #[test]
    fn amplitude_damping_fails() {
        let w = nn("amplitude_damping", 0.5, 202);
        let rho = ComplexMatrix::diag_real(&[0.3, 0.7]);
        let rep = positive_recurrence_check(&w, 0, &rho, 200, 1e-8).unwrap();
        assert_eq!(rep.verdict, RecurrenceVerdict::Fails);
        assert!((rep.return_mass - (1.0 - 0.3 - 0.7 * 0.25)).abs() < 1e-9);
    }

    #[test]
    fn dominance_requires_stationarity() {
        let w = barrier_walk(0.3, 0.3, 60).unwrap();
        let blocks = [(0, ComplexMatrix::identity(2))].into_iter().collect();
        let op = StationaryOperator::new(blocks, 1e-12).unwrap();
        assert!(matches!(
            dominance_check(&w, &op, 0, 10, 1e-9),
            Err(Error::NotStationary { .. })
        ));
    }
}
