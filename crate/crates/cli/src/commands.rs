// SPDX-License-Identifier: Apache-2.0

use std::path::Path;

use pqwalk::io::{parse_channel, parse_matrix, parse_operator, ChannelJson, MatrixJson, WalkJson};
use pqwalk::linalg::PositiveOperator;
use pqwalk::random::{random_density, seeded_rng};
use pqwalk::oqrw::{
    case_series, first_return_exact_capped, monitored_run_from, partial_sums, theorem51_verdict, walk_gallery,
    CaseParams, Theorem51Verdict, DEFAULT_KMAX_CAP, WALK_GALLERY_NAMES,
};
use pqwalk::pq::{gallery, unitary_mixture_qubit, MixturePhases, Params, GALLERY_NAMES};
use pqwalk::stationary::{is_stationary, positive_recurrence_check, rho_st, RecurrenceVerdict};
use pqwalk::{
    classify_spectral, pq_pattern, ChannelReport, ComplexMatrix, DensityMatrix, Error, KrausChannel, PqPattern, Site,
    SpectralClass, WalkSpec, WalkState,
};
use serde::Serialize;

use crate::args::{Cli, Command, Format};
use crate::output::{json, matrix_csv, num, Csv};
use crate::{repro, CliError, CliResult};

pub fn run(cli: &Cli) -> CliResult<String> {
    let tol = cli.tol;
    match &cli.command {
        Command::Gallery {
            name,
            params,
            param,
            list,
        } => {
            only_json(cli, "gallery")?;
            if *list {
                return Ok(json(&serde_json::json!({
                    "channels": GALLERY_NAMES,
                    "walks": WALK_GALLERY_NAMES,
                })));
            }
            let name = name
                .as_deref()
                .ok_or_else(|| CliError::Usage("gallery needs a name or --list".into()))?;
            let params = parse_params(params.iter().chain(param))?;
            let ch = gallery(name.strip_prefix("gallery:").unwrap_or(name), &params)?;
            Ok(json(&ChannelJson::from(&ch)))
        }
        Command::Repr { channel, params } => {
            let ch = load_channel(channel, params, tol)?;
            let rep = ch.matrix_rep();
            Ok(match cli.format.unwrap_or(Format::Csv) {
                Format::Csv => matrix_csv(&rep),
                Format::Json => json(&MatrixJson::from(&rep)),
            })
        }
        Command::Classify { channel, params } => {
            only_json(cli, "classify")?;
            let ch = load_channel(channel, params, tol)?;
            Ok(json(&classify(&ch, tol)?))
        }
        Command::Simulate {
            walk,
            rho0,
            steps,
            start,
            monitor,
            param,
        } => {
            let monitor = monitor.unwrap_or(*start);
            let reach = i64::try_from(*steps).unwrap_or(i64::MAX / 4);
            let window = (start.min(&monitor) - reach - 1, start.max(&monitor) + reach + 1);
            let w = load_walk(walk, param, window, tol)?;
            let rho = load_density(rho0.as_deref(), w.dim(), cli.seed, tol)?;
            let series = monitored_run_from(&w, WalkState::localized(*start, &rho), monitor, *steps)?;
            Ok(match cli.format.unwrap_or(Format::Csv) {
                Format::Json => json(&series),
                Format::Csv => {
                    let mut csv = Csv::with_header(&["n", "S_n", "cumulative_return"]);
                    for (n, (s, c)) in series.per_step_mass.iter().zip(&series.cumulative_return).enumerate() {
                        csv.row([n.to_string(), num(*s), num(*c)]);
                    }
                    csv.finish()
                }
            })
        }
        Command::FirstReturn {
            walk,
            rho0,
            kmax,
            param,
        } => first_return(cli, walk, rho0.as_deref(), *kmax, param),
        Command::Recurrence {
            case,
            x,
            y,
            kmax,
            rho11,
        } => recurrence(cli, *case, *x, *y, *kmax, *rho11),
        Command::Stationary {
            walk,
            site,
            rho,
            horizon,
            traces,
            param,
        } => stationary(cli, walk, *site, rho.as_deref(), *horizon, traces.as_deref(), param),
        Command::CheckStationary { walk, candidate } => {
            only_json(cli, "check-stationary")?;
            let op = parse_operator(&read(candidate)?, tol)?;
            let (lo, hi) = match (op.blocks().keys().next(), op.blocks().keys().next_back()) {
                (Some(&lo), Some(&hi)) => (lo - 2, hi + 2),
                _ => (-2, 2),
            };
            let w = load_walk(walk, &[], (lo, hi), tol)?;
            Ok(json(&is_stationary(&w, &op, tol)?))
        }
        Command::Repro { suite } => repro::run(*suite, cli.format.unwrap_or(Format::Csv), tol),
    }
}

fn only_json(cli: &Cli, command: &str) -> CliResult<()> {
    match cli.format {
        Some(Format::Csv) => Err(CliError::Usage(format!("{command} only produces JSON"))),
        _ => Ok(()),
    }
}

fn read(path: &str) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.to_string(),
        message: e.to_string(),
    })
}

pub fn parse_params<'a>(items: impl IntoIterator<Item = &'a String>) -> CliResult<Params> {
    let mut params = Params::new();
    for item in items {
        let (k, v) = item
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("parameter `{item}` is not key=value")))?;
        let v: f64 = v
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("parameter `{item}` has a non-numeric value")))?;
        params.insert(k.trim().to_string(), v);
    }
    Ok(params)
}

fn load_channel(spec: &str, params: &[String], tol: f64) -> CliResult<KrausChannel> {
    match spec.strip_prefix("gallery:") {
        Some(name) => Ok(gallery(name, &parse_params(params)?)?),
        None => {
            if !params.is_empty() {
                return Err(CliError::Usage("parameters only apply to gallery channels".into()));
            }
            Ok(parse_channel(&read(spec)?, tol)?)
        }
    }
}

enum WalkInput {
    Pair(ComplexMatrix, ComplexMatrix),
    Json(WalkJson),
}

fn walk_input(spec: &str, params: &[String]) -> CliResult<WalkInput> {
    match spec.strip_prefix("gallery:") {
        Some(name) => {
            let (l, r) = walk_gallery(name, &parse_params(params)?)?;
            Ok(WalkInput::Pair(l, r))
        }
        None => {
            if !params.is_empty() {
                return Err(CliError::Usage("parameters only apply to gallery walks".into()));
            }
            let parsed: WalkJson = serde_json::from_str(&read(spec)?).map_err(Error::from)?;
            Ok(WalkInput::Json(parsed))
        }
    }
}

/// Gallery walks get `window`; walk files carry their own.
fn load_walk(spec: &str, params: &[String], window: (Site, Site), tol: f64) -> CliResult<WalkSpec> {
    Ok(match walk_input(spec, params)? {
        WalkInput::Pair(l, r) => WalkSpec::nearest_neighbour(&l, &r, window, tol)?,
        WalkInput::Json(j) => j.to_walk(tol)?,
    })
}

fn load_pair(spec: &str, params: &[String], tol: f64) -> CliResult<(ComplexMatrix, ComplexMatrix)> {
    match walk_input(spec, params)? {
        WalkInput::Pair(l, r) => Ok((l, r)),
        WalkInput::Json(WalkJson::NearestNeighbour { l, r, window, .. }) => {
            let l = ComplexMatrix::try_from(&l)?;
            let r = ComplexMatrix::try_from(&r)?;
            // validates completeness and shapes
            WalkSpec::nearest_neighbour(&l, &r, window, tol)?;
            Ok((l, r))
        }
        WalkInput::Json(_) => Err(Error::Unsupported("first-return enumeration needs an L/R walk".into()).into()),
    }
}

/// `mixed`, `random` (drawn from `seed`), `diag:a,b,...` or a matrix JSON
/// file.
fn load_matrix(spec: Option<&str>, dim: usize, seed: u64) -> CliResult<ComplexMatrix> {
    match spec {
        None | Some("mixed") => Ok(DensityMatrix::maximally_mixed(dim).into_matrix()),
        Some("random") => Ok(random_density(&mut seeded_rng(seed), dim)),
        Some(s) if s.starts_with("diag:") => {
            let probs = s[5..]
                .split(',')
                .map(|v| v.trim().parse::<f64>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|_| Error::Parse(format!("cannot read `{s}` as diag:a,b,...")))?;
            Ok(ComplexMatrix::diag_real(&probs))
        }
        Some(path) => Ok(parse_matrix(&read(path)?)?),
    }
}

fn check_dim(m: &ComplexMatrix, dim: usize) -> CliResult<()> {
    if m.rows() == dim && m.cols() == dim {
        Ok(())
    } else {
        Err(Error::DimensionMismatch {
            context: "initial state vs walk",
            expected: dim,
            found: m.rows(),
        }
        .into())
    }
}

fn load_density(spec: Option<&str>, dim: usize, seed: u64, tol: f64) -> CliResult<DensityMatrix> {
    let m = load_matrix(spec, dim, seed)?;
    check_dim(&m, dim)?;
    Ok(DensityMatrix::new(m, tol)?)
}

#[derive(Serialize)]
struct ClassifyReport {
    dim: usize,
    channel: ChannelReport,
    pq: bool,
    pattern_residual: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    stochastic_defect: Option<f64>,
    #[serde(rename = "P", skip_serializing_if = "Option::is_none")]
    p: Option<Vec<Vec<f64>>>,
    #[serde(rename = "Qblocks", skip_serializing_if = "Option::is_none")]
    q_blocks: Option<Vec<Vec<MatrixJson>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    markov: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    spectral: Option<SpectralClass>,
    #[serde(skip_serializing_if = "Option::is_none")]
    unitary_mixture: Option<MixturePhases>,
}

fn classify(ch: &KrausChannel, tol: f64) -> CliResult<ClassifyReport> {
    let channel = ch.validate(tol);
    let mut report = ClassifyReport {
        dim: ch.dim(),
        channel,
        pq: false,
        pattern_residual: 0.0,
        stochastic_defect: None,
        p: None,
        q_blocks: None,
        markov: None,
        spectral: None,
        unitary_mixture: None,
    };
    match pq_pattern(&ch.matrix_rep(), tol)? {
        PqPattern::NotPq {
            residual,
            stochastic_defect,
        } => {
            report.pattern_residual = residual;
            report.stochastic_defect = Some(stochastic_defect);
        }
        PqPattern::Pq(dec) => {
            report.pq = true;
            report.pattern_residual = dec.residual;
            report.markov = Some(dec.is_markov(tol));
            report.q_blocks = Some(
                dec.q_blocks
                    .iter()
                    .map(|row| row.iter().map(MatrixJson::from).collect())
                    .collect(),
            );
            report.p = Some(dec.p.clone());
            report.spectral = Some(classify_spectral(ch, tol)?);
            if ch.dim() == 2 && channel.unital {
                report.unitary_mixture = unitary_mixture_qubit(ch, tol).ok().map(|(_, ph)| ph);
            }
        }
    }
    Ok(report)
}

/// Enumeration cap: `OQRW_MAX_KMAX` if set, else the library default.
fn kmax_cap() -> CliResult<u64> {
    match std::env::var("OQRW_MAX_KMAX") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("OQRW_MAX_KMAX=`{v}` is not a nonnegative integer")).into()),
        Err(_) => Ok(DEFAULT_KMAX_CAP),
    }
}

#[derive(Serialize)]
struct FirstReturnRow {
    k: u64,
    exact: f64,
    case_formula: Option<f64>,
    abs_diff: Option<f64>,
}

fn first_return(cli: &Cli, walk: &str, rho0: Option<&str>, kmax: u64, params: &[String]) -> CliResult<String> {
    let (l, r) = load_pair(walk, params, cli.tol)?;
    let rho = load_density(rho0, l.rows(), cli.seed, cli.tol)?;
    let exact = first_return_exact_capped(&l, &r, rho.matrix(), kmax, kmax_cap()?)?;
    let case = CaseParams::detect(&l, &r, cli.tol).ok();
    let formula = case.and_then(|c| {
        let d = (rho.matrix().get(0, 0).re, rho.matrix().get(1, 1).re);
        case_series(&c, d, kmax).ok()
    });
    let rows: Vec<FirstReturnRow> = exact
        .iter()
        .map(|(&k, &e)| {
            let f = formula.as_ref().map(|s| s[k as usize - 1]);
            FirstReturnRow {
                k,
                exact: e,
                case_formula: f,
                abs_diff: f.map(|f| (f - e).abs()),
            }
        })
        .collect();
    Ok(match cli.format.unwrap_or(Format::Csv) {
        Format::Json => json(&serde_json::json!({"case": case, "rows": rows})),
        Format::Csv => {
            let mut csv = Csv::with_header(&["k", "exact", "case_formula", "abs_diff"]);
            for row in rows {
                csv.row([
                    row.k.to_string(),
                    num(row.exact),
                    row.case_formula.map(num).unwrap_or_default(),
                    row.abs_diff.map(num).unwrap_or_default(),
                ]);
            }
            csv.finish()
        }
    })
}

/// Closed-form series lengths; Case 2 needs the `O(K³)` path counts.
const RECURRENCE_KMAX: u64 = 100_000;
const RECURRENCE_KMAX_CASE2: u64 = 1_000;

#[derive(Serialize)]
struct RecurrenceReport {
    case: CaseParams,
    rho_diag: (f64, f64),
    verdict: Theorem51Verdict,
    /// Sum of the full series when it has a closed form.
    limit: Option<f64>,
    terms: Vec<f64>,
    partial_sums: Vec<f64>,
}

fn recurrence(cli: &Cli, case: u8, x: f64, y: Option<f64>, kmax: u64, rho11: f64) -> CliResult<String> {
    let y = y.unwrap_or(if case == 2 { 1.0 - x } else { x });
    let params = CaseParams::from_number(case, x, y)?;
    if !(0.0..=1.0).contains(&rho11) {
        return Err(Error::ParameterOutOfRange {
            name: "rho11".into(),
            value: rho11,
            range: "[0, 1]",
        }
        .into());
    }
    let cap = if case == 2 { RECURRENCE_KMAX_CASE2 } else { RECURRENCE_KMAX };
    if kmax == 0 || kmax > cap {
        return Err(Error::CapExceeded {
            what: "kmax",
            requested: kmax,
            cap,
        }
        .into());
    }
    let rho_diag = (rho11, 1.0 - rho11);
    let terms = case_series(&params, rho_diag, kmax)?;
    let (l, r) = params.matrices()?;
    let verdict = theorem51_verdict(&l, &r, cli.tol)?;
    let lim = |v: f64| 1.0 - (1.0 - 2.0 * v).abs();
    let limit = match params {
        CaseParams::Diagonal { l11_sq, l22_sq } => Some(rho_diag.0 * lim(l11_sq) + rho_diag.1 * lim(l22_sq)),
        CaseParams::Antidiagonal { x, y } if (x + y - 1.0).abs() <= cli.tol => Some(lim(x)),
        CaseParams::Mixed { x, .. } => Some(lim(x)),
        CaseParams::Antidiagonal { .. } => None,
    };
    let sums = partial_sums(&terms);
    Ok(match cli.format.unwrap_or(Format::Csv) {
        Format::Json => json(&RecurrenceReport {
            case: params,
            rho_diag,
            verdict,
            limit,
            terms,
            partial_sums: sums,
        }),
        Format::Csv => {
            let mut csv = Csv::with_header(&["k", "term", "partial_sum"]);
            for (i, (t, s)) in terms.iter().zip(&sums).enumerate() {
                csv.row([(i + 1).to_string(), num(*t), num(*s)]);
            }
            csv.finish()
        }
    })
}

#[derive(Serialize)]
struct StationaryReport {
    site: Site,
    horizon: u64,
    trace_at_site: f64,
    trace_sum: f64,
    trace_sum_converged: bool,
    last_decade_increment: f64,
    fixed_point_residual: f64,
    return_mass: f64,
    tail_mass: f64,
    verdict: RecurrenceVerdict,
    normalized_stationarity_residual: f64,
    site_traces: Vec<(Site, f64)>,
}

fn traces_csv(traces: &[(Site, f64)]) -> String {
    let mut csv = Csv::with_header(&["site", "trace"]);
    for (j, t) in traces {
        csv.row([j.to_string(), num(*t)]);
    }
    csv.finish()
}

fn stationary(
    cli: &Cli,
    walk: &str,
    site: Site,
    rho: Option<&str>,
    horizon: u64,
    traces: Option<&Path>,
    params: &[String],
) -> CliResult<String> {
    let reach = i64::try_from(horizon).unwrap_or(i64::MAX / 4);
    let w = load_walk(walk, params, (site - reach - 1, site + reach + 1), cli.tol)?;
    let seed = load_matrix(rho, w.dim(), cli.seed)?;
    check_dim(&seed, w.dim())?;
    let seed = PositiveOperator::new(seed, cli.tol)?.into_matrix();
    let st = rho_st(&w, site, &seed, horizon)?;
    let check = positive_recurrence_check(&w, site, &seed, horizon, cli.tol)?;
    let normalized = st.operator.normalize()?;
    let residual = is_stationary(&w, &normalized, cli.tol)?.max_residual;
    let site_traces = st.site_traces();
    if let Some(path) = traces {
        std::fs::write(path, traces_csv(&site_traces)).map_err(|e| CliError::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
    }
    Ok(match cli.format.unwrap_or(Format::Json) {
        Format::Csv => traces_csv(&site_traces),
        Format::Json => json(&StationaryReport {
            site,
            horizon,
            trace_at_site: st.operator.trace_at(site),
            trace_sum: check.trace_sum,
            trace_sum_converged: check.trace_sum_converged,
            last_decade_increment: check.last_decade_increment,
            fixed_point_residual: check.fixed_point_residual,
            return_mass: check.return_mass,
            tail_mass: check.tail_mass,
            verdict: check.verdict,
            normalized_stationarity_residual: residual,
            site_traces,
        }),
    })
}
