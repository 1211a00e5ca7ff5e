// SPDX-License-Identifier: Apache-2.0

//! Accessibility between sites, communication classes and irreducibility.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;
use crate::oqrw::{Site, WalkSpec, WalkState};

/// Which operators at site `i` must reach `j` for `i → j`.
#[derive(Debug, Clone, PartialEq)]
pub enum TestMode {
    /// Every operator in the supplied family, placed at every site.
    AllTestStates,
    /// Only the blocks reached from each family member placed at `origin`
    /// within the horizon (step `0` included). Sites never reached are left
    /// out of the analysis.
    ReachedStates { origin: Site },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CommunicationReport {
    pub mode: &'static str,
    pub horizon: u64,
    pub family_size: usize,
    /// Sites taking part in the analysis.
    pub sites: Vec<Site>,
    /// Pairs `(i, j)`, `i ≠ j`, with `i → j`.
    pub reach: Vec<(Site, Site)>,
    /// Communication classes of the transitive closure, ordered by first site.
    pub classes: Vec<Vec<Site>>,
    pub irreducible: bool,
}

/// One step that uses whatever transitions a site has, so propagation stops
/// quietly at open window edges instead of failing.
fn spread(w: &WalkSpec, s: &WalkState) -> WalkState {
    let mut next = WalkState::empty();
    for (&j, rho) in s.blocks() {
        for (i, b) in w.outgoing(j) {
            next.add_to(*i, &b.sandwich(rho));
        }
    }
    next
}

/// Sites `j ≠ i` receiving trace above `tol` within `horizon` steps.
fn reached_from(w: &WalkSpec, i: Site, rho: &ComplexMatrix, horizon: u64, tol: f64) -> Vec<bool> {
    let (lo, hi) = w.window();
    let mut hit = vec![false; (hi - lo + 1) as usize];
    let mut s = WalkState::from_block(i, rho.clone());
    for _ in 0..horizon {
        s = spread(w, &s);
        let mass = s.mass();
        if mass <= tol {
            break;
        }
        for (&j, b) in s.blocks() {
            if b.trace().re > tol {
                hit[(j - lo) as usize] = true;
            }
        }
        // rescale so long horizons do not underflow; only positivity matters
        if mass < 1e-100 {
            let mut r = WalkState::empty();
            for (&j, b) in s.blocks() {
                r.insert(j, b.scale_re(1.0 / mass));
            }
            s = r;
        }
    }
    hit
}

pub fn communication_structure(
    w: &WalkSpec,
    family: &[ComplexMatrix],
    horizon: u64,
    mode: &TestMode,
    tol: f64,
) -> Result<CommunicationReport> {
    if horizon == 0 {
        return Err(Error::ParameterOutOfRange {
            name: "horizon".into(),
            value: 0.0,
            range: "horizon >= 1",
        });
    }
    if family.is_empty() {
        return Err(Error::InvalidState {
            what: "empty test family",
            residual: 0.0,
        });
    }
    for f in family {
        if f.rows() != w.dim() || f.cols() != w.dim() {
            return Err(Error::DimensionMismatch {
                context: "test operator",
                expected: w.dim(),
                found: f.rows(),
            });
        }
    }
    let (lo, hi) = w.window();
    let tests: BTreeMap<Site, Vec<ComplexMatrix>> = match mode {
        TestMode::AllTestStates => (lo..=hi).map(|i| (i, family.to_vec())).collect(),
        TestMode::ReachedStates { origin } => {
            if !w.contains(*origin) {
                return Err(Error::SiteOutsideWindow { site: *origin, lo, hi });
            }
            let mut tests: BTreeMap<Site, Vec<ComplexMatrix>> = BTreeMap::new();
            for f in family {
                let mut s = WalkState::from_block(*origin, f.clone());
                for n in 0..=horizon {
                    if n > 0 {
                        s = spread(w, &s);
                    }
                    for (&j, b) in s.blocks() {
                        let t = b.trace().re;
                        if t > tol {
                            let unit = b.scale_re(1.0 / t);
                            let known = tests.entry(j).or_default();
                            if !known.iter().any(|k| k.approx_eq(&unit, 1e-9)) {
                                known.push(unit);
                            }
                        }
                    }
                }
            }
            tests
        }
    };
    let sites: Vec<Site> = tests.keys().copied().collect();
    let index: BTreeMap<Site, usize> = sites.iter().enumerate().map(|(k, &s)| (s, k)).collect();
    let n = sites.len();
    let mut rel = vec![vec![false; n]; n];
    for (a, &i) in sites.iter().enumerate() {
        let mut all = vec![true; (hi - lo + 1) as usize];
        for rho in &tests[&i] {
            let hit = reached_from(w, i, rho, horizon, tol);
            all.iter_mut().zip(hit).for_each(|(x, h)| *x &= h);
        }
        for (b, &j) in sites.iter().enumerate() {
            rel[a][b] = a == b || all[(j - lo) as usize];
        }
    }
    let reach = sites
        .iter()
        .enumerate()
        .flat_map(|(a, &i)| {
            let rel = &rel;
            sites.iter().enumerate().filter(move |&(b, _)| a != b && rel[a][b]).map(move |(_, &j)| (i, j))
        })
        .collect();
    let mut closure = rel;
    for m in 0..n {
        for a in 0..n {
            if closure[a][m] {
                for b in 0..n {
                    if closure[m][b] {
                        closure[a][b] = true;
                    }
                }
            }
        }
    }
    let mut class_of = vec![usize::MAX; n];
    let mut classes: Vec<Vec<Site>> = Vec::new();
    for a in 0..n {
        if class_of[a] != usize::MAX {
            continue;
        }
        let members: Vec<usize> = (a..n).filter(|&b| closure[a][b] && closure[b][a]).collect();
        for &b in &members {
            class_of[b] = classes.len();
        }
        classes.push(members.iter().map(|&b| sites[b]).collect());
    }
    let irreducible = classes.len() == 1 && index.len() == (hi - lo + 1) as usize;
    Ok(CommunicationReport {
        mode: match mode {
            TestMode::AllTestStates => "all_test_states",
            TestMode::ReachedStates { .. } => "reached_states",
        },
        horizon,
        family_size: family.len(),
        sites,
        reach,
        classes,
        irreducible,
    })
}
