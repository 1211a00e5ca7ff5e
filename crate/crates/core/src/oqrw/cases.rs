// SPDX-License-Identifier: Apache-2.0

//! Closed forms for qubit walks driven by diagonal and antidiagonal
//! transitions, and the recurrence verdict for unital PQ pairs.
//!
//! * Case 1: `L`, `R` diagonal.
//! * Case 2: `L`, `R` antidiagonal.
//! * Case 3: `L` diagonal, `R` antidiagonal (or the mirror image).
//!
//! Return probabilities only depend on the squared moduli of the entries
//! and on the diagonal of `ρ0`.

use serde::Serialize;

use super::paths::{alpha_f64, alpha_weighted, case2_counts_f64};
use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, C64};
use crate::pq::is_pq_matrix;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "case", rename_all = "snake_case")]
pub enum CaseParams {
    /// `l11_sq = |l11|²`, `l22_sq = |l22|²`; `|r_ii|² = 1 − |l_ii|²`.
    Diagonal { l11_sq: f64, l22_sq: f64 },
    /// `x = |l21|²`, `y = |r12|²`; `|r21|² = 1 − x`, `|l12|² = 1 − y`.
    Antidiagonal { x: f64, y: f64 },
    /// `x = |l11|²`, `y = |l22|²`; `|r21|² = 1 − x`, `|r12|² = 1 − y`.
    Mixed { x: f64, y: f64 },
}

fn check_unit(name: &str, v: f64) -> Result<()> {
    if (0.0..=1.0).contains(&v) {
        Ok(())
    } else {
        Err(Error::ParameterOutOfRange {
            name: name.to_string(),
            value: v,
            range: "[0, 1]",
        })
    }
}

impl CaseParams {
    pub fn number(&self) -> u8 {
        match self {
            CaseParams::Diagonal { .. } => 1,
            CaseParams::Antidiagonal { .. } => 2,
            CaseParams::Mixed { .. } => 3,
        }
    }

    /// The pair of parameters in declaration order.
    pub fn values(&self) -> (f64, f64) {
        match *self {
            CaseParams::Diagonal { l11_sq, l22_sq } => (l11_sq, l22_sq),
            CaseParams::Antidiagonal { x, y } | CaseParams::Mixed { x, y } => (x, y),
        }
    }

    pub fn from_number(case: u8, a: f64, b: f64) -> Result<Self> {
        let p = match case {
            1 => CaseParams::Diagonal { l11_sq: a, l22_sq: b },
            2 => CaseParams::Antidiagonal { x: a, y: b },
            3 => CaseParams::Mixed { x: a, y: b },
            other => return Err(Error::Unsupported(format!("no case {other}; expected 1, 2 or 3"))),
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        let (a, b) = self.values();
        check_unit("first squared modulus", a)?;
        check_unit("second squared modulus", b)
    }

    /// Real nonnegative `(L, R)` realising the parameters.
    pub fn matrices(&self) -> Result<(ComplexMatrix, ComplexMatrix)> {
        self.validate()?;
        let s = f64::sqrt;
        let m = |rows: [[f64; 2]; 2]| ComplexMatrix::from_real_rows(&rows);
        Ok(match *self {
            CaseParams::Diagonal { l11_sq, l22_sq } => (
                m([[s(l11_sq), 0.0], [0.0, s(l22_sq)]]),
                m([[s(1.0 - l11_sq), 0.0], [0.0, s(1.0 - l22_sq)]]),
            ),
            CaseParams::Antidiagonal { x, y } => (
                m([[0.0, s(1.0 - y)], [s(x), 0.0]]),
                m([[0.0, s(y)], [s(1.0 - x), 0.0]]),
            ),
            CaseParams::Mixed { x, y } => (
                m([[s(x), 0.0], [0.0, s(y)]]),
                m([[0.0, s(1.0 - y)], [s(1.0 - x), 0.0]]),
            ),
        })
    }

    /// Reads the case and squared moduli off a qubit PQ pair. A diagonal `R`
    /// with antidiagonal `L` is the mirror of Case 3 and has the same return
    /// probabilities, so it is reported as Case 3 of `(R, L)`.
    pub fn detect(l: &ComplexMatrix, r: &ComplexMatrix, tol: f64) -> Result<Self> {
        for m in [l, r] {
            if m.rows() != 2 || m.cols() != 2 {
                return Err(Error::Unsupported("case analysis needs 2x2 transitions".into()));
            }
        }
        let sq = |m: &ComplexMatrix, i: usize, j: usize| m.get(i, j).norm_sqr();
        let diag = |m: &ComplexMatrix| m.get(0, 1).norm() <= tol && m.get(1, 0).norm() <= tol;
        let anti = |m: &ComplexMatrix| m.get(0, 0).norm() <= tol && m.get(1, 1).norm() <= tol;
        match (diag(l), anti(l), diag(r), anti(r)) {
            (true, _, true, _) => Ok(CaseParams::Diagonal {
                l11_sq: sq(l, 0, 0),
                l22_sq: sq(l, 1, 1),
            }),
            (_, true, _, true) => Ok(CaseParams::Antidiagonal {
                x: sq(l, 1, 0),
                y: sq(r, 0, 1),
            }),
            (true, _, _, true) => Ok(CaseParams::Mixed {
                x: sq(l, 0, 0),
                y: sq(l, 1, 1),
            }),
            (_, true, true, _) => Ok(CaseParams::Mixed {
                x: sq(r, 0, 0),
                y: sq(r, 1, 1),
            }),
            _ => Err(Error::Unsupported("transitions are not diagonal or antidiagonal".into())),
        }
    }

    /// Whether `{L, R}` is unital. Cases 1 and 2 always are; Case 3 exactly
    /// when `x = y`.
    pub fn is_unital(&self, tol: f64) -> bool {
        match *self {
            CaseParams::Mixed { x, y } => (x - y).abs() <= tol,
            _ => true,
        }
    }
}

/// Probability of first return at step `2k` from a state with diagonal
/// `(ρ11, ρ22)`.
pub fn case_formula(case: &CaseParams, rho_diag: (f64, f64), k: u64) -> Result<f64> {
    if k == 0 {
        return Err(Error::ParameterOutOfRange {
            name: "k".into(),
            value: 0.0,
            range: "k >= 1",
        });
    }
    Ok(*case_series(case, rho_diag, k)?.last().expect("k >= 1"))
}

/// First-return probabilities at `2k` for `k = 1..=k_max`.
pub fn case_series(case: &CaseParams, rho_diag: (f64, f64), k_max: u64) -> Result<Vec<f64>> {
    case.validate()?;
    let (r11, r22) = rho_diag;
    match *case {
        CaseParams::Diagonal { l11_sq, l22_sq } => {
            let a = alpha_weighted(l11_sq * (1.0 - l11_sq), k_max);
            let b = alpha_weighted(l22_sq * (1.0 - l22_sq), k_max);
            Ok(a.iter().zip(&b).map(|(a, b)| a * r11 + b * r22).collect())
        }
        CaseParams::Antidiagonal { x, y } => {
            let counts = case2_counts_f64(k_max);
            Ok(counts
                .iter()
                .enumerate()
                .map(|(idx, c)| {
                    let k = idx as i32 + 1;
                    c.iter()
                        .enumerate()
                        .map(|(b, n)| {
                            let b = b as i32;
                            let c1 = ((1.0 - x) * (1.0 - y)).powi(b) * (x * y).powi(k - b);
                            let c2 = (x * y).powi(b) * ((1.0 - x) * (1.0 - y)).powi(k - b);
                            n * (c1 * r11 + c2 * r22)
                        })
                        .sum()
                })
                .collect())
        }
        CaseParams::Mixed { x, y } => {
            if (x - y).abs() > 1e-12 {
                return Err(Error::Unsupported(
                    "Case 3 closed form needs a unital pair (x = y); use the enumerator".into(),
                ));
            }
            let mass = r11 + r22;
            Ok(alpha_weighted(x * (1.0 - x), k_max).iter().map(|t| t * mass).collect())
        }
    }
}

/// Running sums of a first-return series.
pub fn partial_sums(series: &[f64]) -> Vec<f64> {
    series
        .iter()
        .scan(0.0, |acc, t| {
            *acc += t;
            Some(*acc)
        })
        .collect()
}

/// `∑_{k≤K} α_{2k} (x(1−x))^k` for `K = 1..=k_max`.
pub fn classical_series(x: f64, k_max: u64) -> Vec<f64> {
    partial_sums(&alpha_weighted(x * (1.0 - x), k_max))
}

/// `∑_k α_{2k} (x(1−x))^k = 1 − |1 − 2x|`, the total return probability of
/// the classical walk stepping left with probability `x`.
pub fn classical_limit(x: f64) -> f64 {
    1.0 - (1.0 - 2.0 * x).abs()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum VerdictReason {
    /// Every nonzero entry has squared modulus ½.
    AllHalf,
    /// Some nonzero entry has squared modulus away from ½.
    OffHalf,
    /// Antidiagonal pair with `x = y ∈ {0, 1}`: the walk alternates left and
    /// right deterministically and returns at step 2 with probability 1.
    DeterministicAlternation,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Theorem51Verdict {
    pub recurrent: bool,
    pub reason: VerdictReason,
}

/// Recurrence of the origin for the walk driven by a unital qubit PQ pair.
pub fn theorem51_verdict(l: &ComplexMatrix, r: &ComplexMatrix, tol: f64) -> Result<Theorem51Verdict> {
    for m in [l, r] {
        if m.rows() != 2 || m.cols() != 2 {
            return Err(Error::Unsupported("verdict needs 2x2 transitions".into()));
        }
        if !is_pq_matrix(m, tol)? {
            return Err(Error::Unsupported("verdict needs PQ-matrices".into()));
        }
    }
    let id = ComplexMatrix::identity(2);
    let tp = (&(&l.adjoint() * l) + &(&r.adjoint() * r)).max_abs_diff(&id);
    let unital = (&(l * &l.adjoint()) + &(r * &r.adjoint())).max_abs_diff(&id);
    if tp > tol || unital > tol {
        return Err(Error::Unsupported(format!(
            "verdict needs a unital trace-preserving pair (residuals {tp:.3e}, {unital:.3e})"
        )));
    }
    if let CaseParams::Antidiagonal { x, y } = CaseParams::detect(l, r, tol)? {
        let corner = |v: f64| v <= tol || v >= 1.0 - tol;
        if corner(x) && corner(y) && (x - y).abs() <= tol {
            return Ok(Theorem51Verdict {
                recurrent: true,
                reason: VerdictReason::DeterministicAlternation,
            });
        }
    }
    let all_half = [l, r]
        .iter()
        .flat_map(|m| m.as_slice().iter())
        .filter(|z: &&C64| z.norm() > tol)
        .all(|z| (z.norm_sqr() - 0.5).abs() <= tol);
    Ok(Theorem51Verdict {
        recurrent: all_half,
        reason: if all_half {
            VerdictReason::AllHalf
        } else {
            VerdictReason::OffHalf
        },
    })
}

/// `f_k(x, y) = ∑_b #P_{b,2k} x^b (1−x)^{k−b} y^b (1−y)^{k−b}`.
pub fn case2_fk(k: u64, x: f64, y: f64) -> f64 {
    let counts = &case2_counts_f64(k)[k as usize - 1];
    let k = k as i32;
    counts
        .iter()
        .enumerate()
        .map(|(b, n)| {
            let b = b as i32;
            n * (x * y).powi(b) * ((1.0 - x) * (1.0 - y)).powi(k - b)
        })
        .sum()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FkMaximum {
    /// All global maximisers found, ordered by `x` then `y`.
    pub maximizers: Vec<(f64, f64)>,
    pub value: f64,
}

/// Maximises `f_k` over `[0,1]²` by a 201×201 grid followed by compass
/// search from every grid point within `1e−9` of the grid maximum.
pub fn case2_fk_max(k: u64) -> Result<FkMaximum> {
    if !(1..=8).contains(&k) {
        return Err(Error::ParameterOutOfRange {
            name: "k".into(),
            value: k as f64,
            range: "1 <= k <= 8",
        });
    }
    let n = 200;
    let grid: Vec<(f64, f64, f64)> = (0..=n)
        .flat_map(|i| (0..=n).map(move |j| (i as f64 / n as f64, j as f64 / n as f64)))
        .map(|(x, y)| (x, y, case2_fk(k, x, y)))
        .collect();
    let best = grid.iter().map(|g| g.2).fold(f64::NEG_INFINITY, f64::max);
    let mut maximizers: Vec<(f64, f64)> = Vec::new();
    let mut value = best;
    for &(x0, y0, _) in grid.iter().filter(|g| g.2 >= best - 1e-9) {
        let (x, y, v) = compass(k, x0, y0, 1.0 / n as f64);
        value = value.max(v);
        if !maximizers.iter().any(|&(a, b)| (a - x).abs() < 1e-6 && (b - y).abs() < 1e-6) {
            maximizers.push((x, y));
        }
    }
    maximizers.retain(|&(x, y)| case2_fk(k, x, y) >= value - 1e-12);
    maximizers.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
    Ok(FkMaximum { maximizers, value })
}

fn compass(k: u64, mut x: f64, mut y: f64, mut h: f64) -> (f64, f64, f64) {
    let mut v = case2_fk(k, x, y);
    while h > 1e-13 {
        let mut moved = false;
        for (dx, dy) in [(h, 0.0), (-h, 0.0), (0.0, h), (0.0, -h)] {
            let (nx, ny) = ((x + dx).clamp(0.0, 1.0), (y + dy).clamp(0.0, 1.0));
            let nv = case2_fk(k, nx, ny);
            if nv > v {
                (x, y, v) = (nx, ny, nv);
                moved = true;
                break;
            }
        }
        if !moved {
            h /= 2.0;
        }
    }
    (x, y, v)
}

/// `α_{2k} 4^{−k}`: first-return probability of the symmetric classical walk.
pub fn classical_symmetric_term(k: u64) -> f64 {
    alpha_f64(k) * 0.25f64.powi(k as i32)
}
