// SPDX-License-Identifier: Apache-2.0

//! First-return path counting and exact enumeration of first-return words.

use std::collections::BTreeMap;
use std::ops::AddAssign;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigUint;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;

/// Default cap on `k_max` for [`first_return_exact`].
pub const DEFAULT_KMAX_CAP: u64 = 12;

/// Prefix length used to split the enumeration across workers.
const PREFIX_DEPTH: u64 = 6;

/// Number of ±1 paths of length `2k` whose first return to 0 is at `2k`:
/// `C(2k, k) / (2k − 1)`.
pub fn alpha(k: u64) -> BigUint {
    assert!(k >= 1, "alpha is defined for k >= 1");
    let mut c = BigUint::from(1u32);
    for i in 1..=k {
        c = c * BigUint::from(k + i) / BigUint::from(i);
    }
    c / BigUint::from(2 * k - 1)
}

/// [`alpha`] in 64-bit arithmetic.
pub fn alpha_u64(k: u64) -> Result<u64> {
    if k == 0 {
        return Err(Error::ParameterOutOfRange {
            name: "k".into(),
            value: 0.0,
            range: "k >= 1",
        });
    }
    let overflow = || Error::Overflow(format!("alpha({k}) in 64 bits"));
    let mut c: u128 = 1;
    for i in 1..=u128::from(k) {
        c = c.checked_mul(u128::from(k) + i).ok_or_else(overflow)? / i;
    }
    u64::try_from(c / u128::from(2 * k - 1)).map_err(|_| overflow())
}

/// [`alpha`] in floating point, from `α_{k+1} = α_k · 2(2k−1)/(k+1)`.
pub fn alpha_f64(k: u64) -> f64 {
    assert!(k >= 1, "alpha is defined for k >= 1");
    let mut a = 2.0;
    for j in 1..k {
        a *= 2.0 * (2 * j - 1) as f64 / (j + 1) as f64;
    }
    a
}

/// `α_{2k} c^k` for `k = 1..=k_max`, computed by the ratio recurrence so
/// that neither factor overflows.
pub fn alpha_weighted(c: f64, k_max: u64) -> Vec<f64> {
    let mut out = Vec::with_capacity(k_max as usize);
    let mut t = 2.0 * c;
    for j in 1..=k_max {
        out.push(t);
        t *= 2.0 * (2 * j - 1) as f64 / (j + 1) as f64 * c;
    }
    out
}

struct Enumerator<'a> {
    l: &'a ComplexMatrix,
    r: &'a ComplexMatrix,
    horizon: u64,
}

impl Enumerator<'_> {
    fn dfs(&self, pos: i64, depth: u64, x: &ComplexMatrix, acc: &mut [f64]) {
        if depth > 0 && pos == 0 {
            acc[(depth / 2) as usize] += x.trace().re;
            return;
        }
        if pos.unsigned_abs() > self.horizon - depth {
            return;
        }
        self.dfs(pos - 1, depth + 1, &self.l.sandwich(x), acc);
        self.dfs(pos + 1, depth + 1, &self.r.sandwich(x), acc);
    }

    /// All non-returning prefixes of length `depth`, in L-before-R order;
    /// returns reached inside the prefix go to `acc`.
    fn prefixes(&self, x: &ComplexMatrix, depth: u64, acc: &mut [f64]) -> Vec<(i64, ComplexMatrix)> {
        let mut frontier = vec![(0i64, x.clone())];
        for d in 1..=depth {
            let mut next = Vec::with_capacity(frontier.len() * 2);
            for (pos, m) in frontier {
                for (dp, v) in [(-1, self.l), (1, self.r)] {
                    let p = pos + dp;
                    let y = v.sandwich(&m);
                    if p == 0 {
                        acc[(d / 2) as usize] += y.trace().re;
                    } else if p.unsigned_abs() <= self.horizon - d {
                        next.push((p, y));
                    }
                }
            }
            frontier = next;
        }
        frontier
    }
}

/// Probability of first return to the origin at step `2k`, `k = 1..=k_max`,
/// for the nearest-neighbour walk `(L, R)` started from `ρ0`: the sum of
/// `tr(w ρ0 w*)` over all words `w` whose path first returns at `2k`. Works
/// for any `L`, `R`.
pub fn first_return_exact(
    l: &ComplexMatrix,
    r: &ComplexMatrix,
    rho0: &ComplexMatrix,
    k_max: u64,
) -> Result<BTreeMap<u64, f64>> {
    first_return_exact_capped(l, r, rho0, k_max, DEFAULT_KMAX_CAP)
}

/// [`first_return_exact`] with an explicit cap on `k_max`.
pub fn first_return_exact_capped(
    l: &ComplexMatrix,
    r: &ComplexMatrix,
    rho0: &ComplexMatrix,
    k_max: u64,
    cap: u64,
) -> Result<BTreeMap<u64, f64>> {
    if k_max > cap {
        return Err(Error::CapExceeded {
            what: "k_max",
            requested: k_max,
            cap,
        });
    }
    if k_max == 0 {
        return Ok(BTreeMap::new());
    }
    let d = rho0.require_square()?;
    for m in [l, r] {
        if m.rows() != d || m.cols() != d {
            return Err(Error::DimensionMismatch {
                context: "walk transition",
                expected: d,
                found: m.rows(),
            });
        }
    }
    let horizon = 2 * k_max;
    let en = Enumerator { l, r, horizon };
    let mut acc = vec![0.0; k_max as usize + 1];
    let prefixes = en.prefixes(rho0, PREFIX_DEPTH.min(horizon), &mut acc);
    let depth = PREFIX_DEPTH.min(horizon);
    let partials: Vec<Vec<f64>> = prefixes
        .par_iter()
        .map(|(pos, x)| {
            let mut local = vec![0.0; k_max as usize + 1];
            en.dfs(*pos, depth, x, &mut local);
            local
        })
        .collect();
    // fixed reduction order keeps results bit-identical across thread counts
    for part in &partials {
        for (a, p) in acc.iter_mut().zip(part) {
            *a += p;
        }
    }
    Ok((1..=k_max).map(|k| (k, acc[k as usize])).collect())
}

fn counts_dp<T: Copy + Default + AddAssign>(k_max: usize, one: T) -> Vec<Vec<T>> {
    let width = 2 * k_max + 1;
    let at = |pos: usize, b: usize| pos * (k_max + 1) + b;
    let mut cur = vec![T::default(); width * (k_max + 1)];
    cur[at(k_max, 0)] = one;
    let mut out: Vec<Vec<T>> = (0..=k_max).map(|k| vec![T::default(); k + 1]).collect();
    for t in 1..=2 * k_max {
        let odd = t % 2 == 1;
        let mut next = vec![T::default(); width * (k_max + 1)];
        for pos in 0..width {
            if t > 1 && pos == k_max {
                continue;
            }
            for b in 0..=k_max {
                let c = cur[at(pos, b)];
                if pos > 0 {
                    next[at(pos - 1, b)] += c;
                }
                if pos + 1 < width {
                    let nb = if odd { b + 1 } else { b };
                    if nb <= k_max {
                        next[at(pos + 1, nb)] += c;
                    }
                }
            }
        }
        if t % 2 == 0 {
            let k = t / 2;
            for (b, slot) in out[k].iter_mut().enumerate() {
                *slot = next[at(k_max, b)];
            }
        }
        for b in 0..=k_max {
            next[at(k_max, b)] = T::default();
        }
        cur = next;
    }
    out
}

/// `#P_{b,2k}` for `b = 0..=k`: first-return paths of length `2k` that move
/// right at exactly `b` odd instants. Exact for `k <= 60`.
pub fn case2_counts(k: u64) -> Result<Vec<u128>> {
    if !(1..=60).contains(&k) {
        return Err(Error::ParameterOutOfRange {
            name: "k".into(),
            value: k as f64,
            range: "1 <= k <= 60 for exact counts",
        });
    }
    Ok(counts_dp::<u128>(k as usize, 1).swap_remove(k as usize))
}

static COUNT_CACHE: OnceLock<Mutex<Vec<Vec<f64>>>> = OnceLock::new();

/// Floating-point `#P_{b,2k}` for `k = 1..=k_max`, cached across calls.
/// Entry `k − 1` of the result holds the counts for `k`.
pub fn case2_counts_f64(k_max: u64) -> Vec<Vec<f64>> {
    let cache = COUNT_CACHE.get_or_init(|| Mutex::new(Vec::new()));
    let mut guard = cache.lock().expect("count cache poisoned");
    if (guard.len() as u64) < k_max {
        let all = counts_dp::<f64>(k_max as usize, 1.0);
        *guard = all.into_iter().skip(1).collect();
    }
    guard[..k_max as usize].to_vec()
}
