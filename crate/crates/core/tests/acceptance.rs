// SPDX-License-Identifier: Apache-2.0

//! End-to-end acceptance checks. Each prints one PASS/FAIL line; the binary
//! exits non-zero if any fails.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use pqwalk::linalg::{eigenvalues, mat_exp, spectrum_distance};
use pqwalk::oqrw::{
    case_formula, case_series, classical_series, first_return_exact, monitored_run, theorem51_verdict, walk_gallery,
    CaseParams, WALK_GALLERY_NAMES,
};
use pqwalk::pq::{
    gallery, random_unital_qubit_pq_channel, reference, split_pattern, split_spectrum, verify_pq_kraus_candidate,
    Params,
};
use pqwalk::random::{random_density, random_isometry, seeded_rng};
use pqwalk::stationary::{barrier_walk, is_stationary, positive_recurrence_check, rho_st, RecurrenceVerdict};
use pqwalk::{pq_pattern, ComplexMatrix, DensityMatrix, WalkSpec};

struct Outcome {
    ok: bool,
    detail: String,
}

fn params(kv: &[(&str, f64)]) -> Params {
    kv.iter().map(|(k, v)| (k.to_string(), *v)).collect()
}

/// `∑_{k≤K} α_{2k} c^k` from the term ratio `t_{k+1}/t_k = 2(2k−1)c/(k+1)`.
fn alpha_partial_sums(c: f64, k_max: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(k_max);
    let (mut term, mut acc) = (2.0 * c, 0.0);
    for k in 1..=k_max {
        acc += term;
        out.push(acc);
        term *= 2.0 * (2.0 * k as f64 - 1.0) * c / (k as f64 + 1.0);
    }
    out
}

fn c1_appendix() -> Outcome {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    for p in [0.2, 0.4, 0.7] {
        let q = 1.0 - p;
        let bit_flip =
            ComplexMatrix::from_real_rows(&[[p, 0.0, 0.0, q], [0.0, p, q, 0.0], [0.0, q, p, 0.0], [q, 0.0, 0.0, p]]);
        let pairs = [
            ("bit_flip", bit_flip),
            ("bit_phase_flip", reference::bit_phase_flip(p)),
            ("amplitude_damping", reference::amplitude_damping(p)),
            ("depolarizing", reference::depolarizing(p)),
        ];
        for (name, golden) in pairs {
            let rep = gallery(name, &params(&[("p", p)])).unwrap().matrix_rep();
            worst = worst.max(rep.max_abs_diff(&golden));
        }
    }
    let cnot = gallery("cnot2", &params(&[("p", 0.7)])).unwrap().matrix_rep();
    worst = worst.max(cnot.max_abs_diff(&reference::cnot2(0.7)));
    let elapsed = start.elapsed();
    Outcome {
        ok: worst <= 1e-12 && elapsed < Duration::from_secs(1),
        detail: format!("max entry error {worst:.2e}, {elapsed:.2?}"),
    }
}

fn c2_landau_streater() -> Outcome {
    use pqwalk::pq::gallery::{landau_streater, landau_streater_pq_candidate};
    let ch = landau_streater();
    let err = ch.matrix_rep().max_abs_diff(&reference::landau_streater());
    let cand = verify_pq_kraus_candidate(&ch, &landau_streater_pq_candidate(), 1e-12).unwrap();
    Outcome {
        ok: err <= 1e-12 && cand.valid,
        detail: format!(
            "rep error {err:.2e}, candidate valid={} (rep {:.2e}, tp {:.2e})",
            cand.valid, cand.rep_residual, cand.tp_residual
        ),
    }
}

fn c3_classical() -> Outcome {
    let start = Instant::now();
    let sums = classical_series(0.5, 200);
    let oracle = alpha_partial_sums(0.25, 200);
    let series_err = sums.iter().zip(&oracle).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    let monotone = sums.windows(2).all(|w| w[1] >= w[0]);
    let (l, r) = walk_gallery("classical_symmetric", &Params::new()).unwrap();
    let w = WalkSpec::nearest_neighbour(&l, &r, (-14, 14), 1e-12).unwrap();
    let run = monitored_run(&w, &DensityMatrix::maximally_mixed(2), 0, 12).unwrap();
    let mon_err = (1..=6)
        .map(|k| (run.cumulative_return[2 * k] - sums[k - 1]).abs())
        .fold(0.0, f64::max);
    let elapsed = start.elapsed();
    Outcome {
        ok: sums[199] >= 0.95 && monotone && mon_err <= 1e-9 && series_err <= 1e-12 && elapsed < Duration::from_secs(10),
        detail: format!(
            "S_200 = {:.6}, monotone={monotone}, monitored diff {mon_err:.2e}, {elapsed:.2?}",
            sums[199]
        ),
    }
}

fn c4_theorem51() -> Outcome {
    let mut failures = Vec::new();
    let mut worst_sum: f64 = 0.0;
    let mut worst_enum: f64 = 0.0;
    let mut rng = seeded_rng(51);
    for case in 1..=3u8 {
        for x in [0.2, 0.5, 0.8] {
            let y = if case == 2 { 1.0 - x } else { x };
            let cp = CaseParams::from_number(case, x, y).unwrap();
            let (l, r) = cp.matrices().unwrap();
            let verdict = theorem51_verdict(&l, &r, 1e-10).unwrap();
            if verdict.recurrent != (x == 0.5) {
                failures.push(format!("case{case} x={x} verdict"));
            }
            let rho = random_density(&mut rng, 2);
            let diag = (rho.get(0, 0).re, rho.get(1, 1).re);
            let exact = first_return_exact(&l, &r, &rho, 6).unwrap();
            for (k, v) in &exact {
                worst_enum = worst_enum.max((v - case_formula(&cp, diag, *k).unwrap()).abs());
            }
            if x != 0.5 {
                let total: f64 = case_series(&cp, diag, 200).unwrap().iter().sum();
                let c = x * (1.0 - x);
                let closed = 1.0 - (1.0 - 4.0 * c).sqrt();
                let truncated = alpha_partial_sums(c, 200)[199];
                let err = (total - closed).abs().max((total - truncated).abs());
                worst_sum = worst_sum.max(err);
                if err > 1e-4 || total > 1.0 - 1e-2 {
                    failures.push(format!("case{case} x={x} series {total}"));
                }
            }
        }
    }
    Outcome {
        ok: failures.is_empty() && worst_enum <= 1e-10,
        detail: format!(
            "series vs closed form {worst_sum:.2e}, formula vs enumerator {worst_enum:.2e}{}",
            if failures.is_empty() { String::new() } else { format!(", failed: {failures:?}") }
        ),
    }
}

fn c5_amplitude_damping() -> Outcome {
    let p: f64 = 0.5;
    let (l, r) = walk_gallery("amplitude_damping", &params(&[("p", p)])).unwrap();
    let w = WalkSpec::nearest_neighbour(&l, &r, (-102, 102), 1e-12).unwrap();
    let run = monitored_run(&w, &DensityMatrix::diagonal(&[0.3, 0.7]).unwrap(), 0, 100).unwrap();
    let limit = 0.3 + 0.7 * (1.0 - p).powi(2);
    let err = (run.per_step_mass[100] - limit).abs();
    Outcome {
        ok: err <= 1e-6,
        detail: format!("S_100 = {:.10}, limit {limit}, diff {err:.2e}", run.per_step_mass[100]),
    }
}

fn c6_pq_algebra() -> Outcome {
    let mut rng = seeded_rng(6);
    let mut worst = [0.0f64; 6];
    for i in 0..100 {
        let ch = random_unital_qubit_pq_channel(&mut rng, i % 2 == 0);
        let rep = ch.matrix_rep();
        let (p, q) = split_pattern(&rep).unwrap();
        worst[0] = worst[0].max((&p * &q).max_abs()).max((&q * &p).max_abs());
        for n in 1..=10 {
            let lhs = rep.pow(n).unwrap();
            let rhs = &p.pow(n).unwrap() + &q.pow(n).unwrap();
            worst[1] = worst[1].max(lhs.max_abs_diff(&rhs));
        }
        let gen = &rep - &ComplexMatrix::identity(4);
        let (gr, gs) = split_pattern(&gen).unwrap();
        for t in [0.3, 1.0, 2.5] {
            let whole = mat_exp(&rep, t).unwrap();
            let split = &mat_exp(&p, t).unwrap() * &mat_exp(&q, t).unwrap();
            worst[2] = worst[2].max(whole.max_abs_diff(&split));
            let whole = mat_exp(&gen, t).unwrap();
            let split = &mat_exp(&gr, t).unwrap() * &mat_exp(&gs, t).unwrap();
            worst[3] = worst[3].max(whole.max_abs_diff(&split));
        }
        let dec = pq_pattern(&rep, 1e-10).unwrap().into_result().unwrap();
        worst[4] = worst[4].max(spectrum_distance(&eigenvalues(&rep).unwrap(), &split_spectrum(&dec).unwrap()));
        let m = ch.kraus().len();
        let remixed = ch.remix(&random_isometry(&mut rng, m + 2, m)).unwrap();
        worst[5] = worst[5].max(remixed.matrix_rep().max_abs_diff(&rep));
    }
    Outcome {
        ok: worst.iter().all(|&e| e <= 1e-9),
        detail: format!(
            "[P][Q] {:.1e}, powers {:.1e}, exp {:.1e}, exp(L) {:.1e}, spectrum {:.1e}, remix {:.1e}",
            worst[0], worst[1], worst[2], worst[3], worst[4], worst[5]
        ),
    }
}

/// Expected visits to each site before the first return to `0` for the
/// scalar chain `0 → 1`, `i → i+1` w.p. `p`, `i → i−1` w.p. `1 − p`,
/// counting `0` once at time zero and stopping after `t_max` steps.
fn reflecting_chain_visits(p: f64, t_max: usize) -> Vec<f64> {
    let n = t_max + 2;
    let mut visits = vec![0.0; n];
    visits[0] = 1.0;
    let mut dist = vec![0.0; n];
    dist[1] = 1.0;
    for t in 1..=t_max {
        for (v, d) in visits.iter_mut().zip(&dist).skip(1) {
            *v += d;
        }
        if t == t_max {
            break;
        }
        let mut next = vec![0.0; n];
        for i in 1..n - 1 {
            if i > 1 {
                next[i - 1] += (1.0 - p) * dist[i];
            }
            next[i + 1] += p * dist[i];
        }
        dist = next;
    }
    visits
}

fn c7_barrier() -> Outcome {
    let (p, t_max) = (0.3, 400u64);
    let w = barrier_walk(p, p, t_max as i64 + 2).unwrap();
    let rho = DensityMatrix::maximally_mixed(2).into_matrix();
    let st = rho_st(&w, 0, &rho, t_max).unwrap();
    let tr0 = st.operator.trace_at(0);
    let stat = is_stationary(&w, &st.operator.normalize().unwrap(), 1e-8).unwrap();
    let check = positive_recurrence_check(&w, 0, &rho, t_max, 1e-8).unwrap();
    let oracle = reflecting_chain_visits(p, t_max as usize);
    let traces: BTreeMap<i64, f64> = st.site_traces().into_iter().collect();
    let site_err = oracle
        .iter()
        .enumerate()
        .map(|(j, v)| (traces.get(&(j as i64)).copied().unwrap_or(0.0) - v).abs())
        .fold(0.0, f64::max);
    let ok = (tr0 - 1.0).abs() <= 1e-6
        && stat.max_residual <= 1e-8
        && check.verdict == RecurrenceVerdict::PositiveRecurrentEvidence
        && site_err <= 1e-8;
    Outcome {
        ok,
        detail: format!(
            "tr rho_st(0) = {tr0:.10}, stationarity {:.1e}, verdict {:?}, site traces {site_err:.1e}",
            stat.max_residual, check.verdict
        ),
    }
}

fn c8_null_recurrence() -> Outcome {
    let t_max = 2000u64;
    let (l, r) = walk_gallery("classical_symmetric", &Params::new()).unwrap();
    let edge = t_max as i64 + 1;
    let w = WalkSpec::nearest_neighbour(&l, &r, (-edge, edge), 1e-12).unwrap();
    let rho = DensityMatrix::maximally_mixed(2).into_matrix();
    let check = positive_recurrence_check(&w, 0, &rho, t_max, 1e-8).unwrap();
    Outcome {
        ok: !check.trace_sum_converged && check.verdict != RecurrenceVerdict::PositiveRecurrentEvidence,
        detail: format!(
            "trace sum {:.3}, last-tenth increment {:.3}, converged={}, verdict {:?}",
            check.trace_sum, check.last_decade_increment, check.trace_sum_converged, check.verdict
        ),
    }
}

fn c9_oracle_cross_check() -> Outcome {
    let mut rng = seeded_rng(9);
    let mut worst: f64 = 0.0;
    let mut odd: f64 = 0.0;
    let p = params(&[("p", 0.3), ("x", 0.3), ("y", 0.6)]);
    for name in WALK_GALLERY_NAMES {
        let (l, r) = walk_gallery(name, &p).unwrap();
        let rho = random_density(&mut rng, 2);
        let exact = first_return_exact(&l, &r, &rho, 6).unwrap();
        let w = WalkSpec::nearest_neighbour(&l, &r, (-14, 14), 1e-12).unwrap();
        let run = monitored_run(&w, &DensityMatrix::new(rho, 1e-12).unwrap(), 0, 12).unwrap();
        for k in 1..=6u64 {
            worst = worst.max((exact[&k] - run.removed_per_step[2 * k as usize]).abs());
            odd = odd.max(run.removed_per_step[2 * k as usize - 1].abs());
        }
    }
    Outcome {
        ok: worst <= 1e-10 && odd <= 1e-10,
        detail: format!("{} walks, max diff {worst:.2e}", WALK_GALLERY_NAMES.len()),
    }
}

fn main() {
    let checks: [(&str, fn() -> Outcome); 9] = [
        ("appendix golden matrices", c1_appendix),
        ("Landau-Streater representation and PQ candidate", c2_landau_streater),
        ("classical symmetric recurrence", c3_classical),
        ("case 1-3 sweep", c4_theorem51),
        ("amplitude-damping transience", c5_amplitude_damping),
        ("PQ algebra on random unital qubit channels", c6_pq_algebra),
        ("barrier walk stationary operator", c7_barrier),
        ("null-recurrence contrast", c8_null_recurrence),
        ("first-return oracle cross-check", c9_oracle_cross_check),
    ];
    let mut failed = 0;
    for (i, (name, check)) in checks.iter().enumerate() {
        let out = check();
        let tag = if out.ok { "PASS" } else { "FAIL" };
        if !out.ok {
            failed += 1;
        }
        println!("{tag} criterion {}: {name} ({})", i + 1, out.detail);
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
