// SPDX-License-Identifier: Apache-2.0

//! Reference-number suites printed as pass/fail tables.

use pqwalk::oqrw::{case_series, classical_series, monitored_run, theorem51_verdict, walk_gallery, CaseParams};
use pqwalk::pq::{gallery, reference, verify_pq_kraus_candidate, Params};
use pqwalk::stationary::{barrier_walk, is_stationary, positive_recurrence_check, rho_st, RecurrenceVerdict};
use pqwalk::{ComplexMatrix, DensityMatrix, WalkSpec};
use serde::Serialize;

use crate::args::{Format, Suite};
use crate::output::{json, num, Csv};
use crate::CliResult;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
enum Status {
    Pass,
    Fail,
    Info,
}

#[derive(Debug, Serialize)]
struct Row {
    check: String,
    value: f64,
    reference: f64,
    residual: f64,
    tolerance: Option<f64>,
    status: Status,
}

fn checked(check: impl Into<String>, value: f64, reference: f64, tolerance: f64) -> Row {
    let residual = (value - reference).abs();
    Row {
        check: check.into(),
        value,
        reference,
        residual,
        tolerance: Some(tolerance),
        status: if residual <= tolerance { Status::Pass } else { Status::Fail },
    }
}

fn info(check: impl Into<String>, value: f64, reference: f64) -> Row {
    Row {
        check: check.into(),
        value,
        reference,
        residual: (value - reference).abs(),
        tolerance: None,
        status: Status::Info,
    }
}

fn flag(check: impl Into<String>, ok: bool) -> Row {
    checked(check, if ok { 1.0 } else { 0.0 }, 1.0, 0.0)
}

fn params(kv: &[(&str, f64)]) -> Params {
    kv.iter().map(|(k, v)| (k.to_string(), *v)).collect()
}

fn appendix() -> CliResult<Vec<Row>> {
    let p = 0.4;
    let cases: [(&str, f64, ComplexMatrix); 6] = [
        ("bit_flip", p, reference::bit_flip(p)),
        ("bit_phase_flip", p, reference::bit_phase_flip(p)),
        ("amplitude_damping", p, reference::amplitude_damping(p)),
        ("depolarizing", p, reference::depolarizing(p)),
        ("cnot2", 0.7, reference::cnot2(0.7)),
        ("landau_streater", 0.0, reference::landau_streater()),
    ];
    let mut rows = Vec::new();
    for (name, p, golden) in cases {
        let rep = gallery(name, &params(&[("p", p)]))?.matrix_rep();
        rows.push(checked(format!("{name} p={p}"), rep.max_abs_diff(&golden), 0.0, 1e-12));
    }
    Ok(rows)
}

fn landau_streater(tol: f64) -> CliResult<Vec<Row>> {
    use pqwalk::pq::gallery::{landau_streater, landau_streater_pq_candidate};
    let ch = landau_streater();
    let rep = ch.matrix_rep();
    let cand = verify_pq_kraus_candidate(&ch, &landau_streater_pq_candidate(), tol)?;
    Ok(vec![
        checked("representation", rep.max_abs_diff(&reference::landau_streater()), 0.0, 1e-12),
        checked("candidate representation", cand.rep_residual, 0.0, 1e-12),
        checked("candidate trace preservation", cand.tp_residual, 0.0, 1e-12),
        flag("candidate valid", cand.valid),
    ])
}

fn theorem51(tol: f64) -> CliResult<Vec<Row>> {
    let mut rows = Vec::new();
    for case in 1..=3u8 {
        for x in [0.2, 0.5, 0.8] {
            let y = if case == 2 { 1.0 - x } else { x };
            let params = CaseParams::from_number(case, x, y)?;
            let (l, r) = params.matrices()?;
            let verdict = theorem51_verdict(&l, &r, tol)?;
            rows.push(flag(
                format!("case{case} x={x} recurrent={}", x == 0.5),
                verdict.recurrent == (x == 0.5),
            ));
            let series = case_series(&params, (0.5, 0.5), 200)?;
            let total: f64 = series.iter().sum();
            let limit = 1.0 - (1.0 - 4.0 * x * (1.0 - x)).sqrt();
            let label = format!("case{case} x={x} series K=200");
            rows.push(if x == 0.5 {
                info(label, total, limit)
            } else {
                checked(label, total, limit, 1e-4)
            });
        }
    }
    Ok(rows)
}

fn amplitude_damping() -> CliResult<Vec<Row>> {
    let (l, r) = walk_gallery("amplitude_damping", &params(&[("p", 0.5)]))?;
    let w = WalkSpec::nearest_neighbour(&l, &r, (-102, 102), 1e-12)?;
    let rho = DensityMatrix::diagonal(&[0.3, 0.7])?;
    let run = monitored_run(&w, &rho, 0, 100)?;
    Ok(vec![
        checked("S_100", run.per_step_mass[100], 0.475, 1e-6),
        checked("return estimate", run.return_estimate(), 0.525, 1e-6),
        checked("mass ledger", run.ledger_defect(), 0.0, 1e-9),
    ])
}

fn barrier(tol: f64) -> CliResult<Vec<Row>> {
    let (p, t_max) = (0.3, 400u64);
    let q = 1.0 - p;
    let w = barrier_walk(p, p, t_max as i64 + 2)?;
    let rho = DensityMatrix::maximally_mixed(2).into_matrix();
    let st = rho_st(&w, 0, &rho, t_max)?;
    let stationary = is_stationary(&w, &st.operator.normalize()?, tol)?;
    let check = positive_recurrence_check(&w, 0, &rho, t_max, tol)?;
    let gamma = |j: i64| if j == 0 { 1.0 } else { (p / q).powi(j as i32 - 1) / q };
    let worst = st
        .site_traces()
        .iter()
        .map(|&(j, t)| (t - gamma(j)).abs())
        .fold(0.0, f64::max);
    Ok(vec![
        checked("tr rho_st(0)", st.operator.trace_at(0), 1.0, 1e-6),
        checked("normalized stationarity residual", stationary.max_residual, 0.0, 1e-8),
        flag(
            "positive recurrence evidence",
            check.verdict == RecurrenceVerdict::PositiveRecurrentEvidence,
        ),
        checked("trace sum", check.trace_sum, 1.0 + 1.0 / (q - p), 1e-6),
        checked("site traces vs classical chain", worst, 0.0, 1e-8),
    ])
}

fn classical() -> Vec<Row> {
    let sums = classical_series(0.5, 200);
    let mut rows: Vec<Row> = [1usize, 2, 5, 10, 20, 50, 100]
        .iter()
        .map(|&k| info(format!("partial sum K={k}"), sums[k - 1], 1.0))
        .collect();
    rows.push(checked("partial sum K=200", sums[199], 1.0, 0.05));
    rows.push(flag("monotone", sums.windows(2).all(|w| w[1] >= w[0])));
    rows
}

pub fn run(suite: Suite, format: Format, tol: f64) -> CliResult<String> {
    let rows = match suite {
        Suite::Appendix => appendix()?,
        Suite::LandauStreater => landau_streater(tol)?,
        Suite::Theorem51 => theorem51(tol)?,
        Suite::AmplitudeDamping => amplitude_damping()?,
        Suite::Barrier => barrier(tol.min(1e-8))?,
        Suite::Classical => classical(),
    };
    Ok(match format {
        Format::Json => json(&rows),
        Format::Csv => {
            let mut csv = Csv::with_header(&["check", "value", "reference", "residual", "tolerance", "status"]);
            for r in rows {
                csv.row([
                    r.check,
                    num(r.value),
                    num(r.reference),
                    num(r.residual),
                    r.tolerance.map(num).unwrap_or_default(),
                    format!("{:?}", r.status).to_uppercase(),
                ]);
            }
            csv.finish()
        }
    })
}
