// SPDX-License-Identifier: Apache-2.0

//! Walk specifications on a finite window of ℤ and the one-step map
//! `ρ'_i = ∑_j B_j^i ρ_j B_j^{i*}`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, DensityMatrix};

pub type Site = i64;

/// Transitions `B_j^i` on the sites `lo..=hi`.
///
/// Every site must satisfy `∑_i B_j^{i*} B_j^i = I`, except the two window
/// edges, which may be left incomplete when the walk is a truncation of a
/// walk on ℤ. Such *open* edges must never carry mass: stepping from a
/// nonzero block at an open edge fails with [`Error::WindowClipped`].
#[derive(Debug, Clone, PartialEq)]
pub struct WalkSpec {
    dim: usize,
    lo: Site,
    hi: Site,
    outgoing: BTreeMap<Site, Vec<(Site, ComplexMatrix)>>,
    open_lo: bool,
    open_hi: bool,
}

fn completeness_residual(dim: usize, out: &[(Site, ComplexMatrix)]) -> f64 {
    let mut acc = ComplexMatrix::zeros(dim, dim);
    for (_, b) in out {
        acc.add_assign_from(&(&b.adjoint() * b));
    }
    acc.max_abs_diff(&ComplexMatrix::identity(dim))
}

impl WalkSpec {
    /// Builds a walk from `(from, to, B)` triples. Repeated pairs are summed
    /// as separate Kraus terms.
    pub fn from_transitions(
        dim: usize,
        window: (Site, Site),
        transitions: Vec<(Site, Site, ComplexMatrix)>,
        tol: f64,
    ) -> Result<Self> {
        let (lo, hi) = window;
        if lo > hi {
            return Err(Error::EmptyWindow { lo, hi });
        }
        let mut outgoing: BTreeMap<Site, Vec<(Site, ComplexMatrix)>> = BTreeMap::new();
        for (from, to, b) in transitions {
            if from < lo || from > hi || to < lo || to > hi {
                return Err(Error::TransitionOutsideWindow { from, to, lo, hi });
            }
            if b.rows() != dim || b.cols() != dim {
                return Err(Error::DimensionMismatch {
                    context: "transition matrix",
                    expected: dim,
                    found: b.rows(),
                });
            }
            outgoing.entry(from).or_default().push((to, b));
        }
        let mut open_lo = false;
        let mut open_hi = false;
        for site in lo..=hi {
            let residual = outgoing
                .get(&site)
                .map_or(1.0, |out| completeness_residual(dim, out));
            if residual > tol {
                if site == lo {
                    open_lo = true;
                } else if site == hi {
                    open_hi = true;
                } else {
                    return Err(Error::CompletenessViolation { site, residual });
                }
            }
        }
        Ok(Self {
            dim,
            lo,
            hi,
            outgoing,
            open_lo,
            open_hi,
        })
    }

    /// Nearest-neighbour walk `B_i^{i−1} = L`, `B_i^{i+1} = R` truncated to
    /// `window`. Both edges are open.
    pub fn nearest_neighbour(l: &ComplexMatrix, r: &ComplexMatrix, window: (Site, Site), tol: f64) -> Result<Self> {
        let dim = l.require_square()?;
        if r.rows() != dim || r.cols() != dim {
            return Err(Error::DimensionMismatch {
                context: "right transition",
                expected: dim,
                found: r.rows(),
            });
        }
        let (lo, hi) = window;
        if lo > hi {
            return Err(Error::EmptyWindow { lo, hi });
        }
        let sum = &(&l.adjoint() * l) + &(&r.adjoint() * r);
        let residual = sum.max_abs_diff(&ComplexMatrix::identity(dim));
        if residual > tol {
            return Err(Error::CompletenessViolation { site: lo, residual });
        }
        let mut outgoing = BTreeMap::new();
        for j in lo..=hi {
            let mut out = Vec::with_capacity(2);
            if j > lo {
                out.push((j - 1, l.clone()));
            }
            if j < hi {
                out.push((j + 1, r.clone()));
            }
            outgoing.insert(j, out);
        }
        Ok(Self {
            dim,
            lo,
            hi,
            outgoing,
            open_lo: true,
            open_hi: true,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn window(&self) -> (Site, Site) {
        (self.lo, self.hi)
    }

    pub fn contains(&self, site: Site) -> bool {
        site >= self.lo && site <= self.hi
    }

    pub fn open_edges(&self) -> Vec<Site> {
        let mut edges = Vec::new();
        if self.open_lo {
            edges.push(self.lo);
        }
        if self.open_hi && !(self.open_lo && self.hi == self.lo) {
            edges.push(self.hi);
        }
        edges
    }

    pub fn is_open_edge(&self, site: Site) -> bool {
        (self.open_lo && site == self.lo) || (self.open_hi && site == self.hi)
    }

    pub fn outgoing(&self, site: Site) -> &[(Site, ComplexMatrix)] {
        self.outgoing.get(&site).map_or(&[], Vec::as_slice)
    }

    /// Largest `|i − j|` over all transitions.
    pub fn max_jump(&self) -> u64 {
        self.outgoing
            .iter()
            .flat_map(|(j, out)| out.iter().map(move |(i, _)| i.abs_diff(*j)))
            .max()
            .unwrap_or(0)
    }

    /// Every transition as `(from, to, B)`, ordered by source.
    pub fn transitions(&self) -> impl Iterator<Item = (Site, Site, &ComplexMatrix)> {
        self.outgoing
            .iter()
            .flat_map(|(j, out)| out.iter().map(move |(i, b)| (*j, *i, b)))
    }

    /// Ensures `n` steps from mass supported in `[min, max]` never touch an
    /// open edge.
    pub fn require_room(&self, support: (Site, Site), n: u64) -> Result<()> {
        let reach = i64::try_from(n.saturating_mul(self.max_jump())).unwrap_or(i64::MAX);
        let (min, max) = support;
        if !self.contains(min) || !self.contains(max) {
            let site = if self.contains(min) { max } else { min };
            return Err(Error::SiteOutsideWindow {
                site,
                lo: self.lo,
                hi: self.hi,
            });
        }
        let lo_ok = !self.open_lo || min.saturating_sub(reach) > self.lo;
        let hi_ok = !self.open_hi || max.saturating_add(reach) < self.hi;
        if lo_ok && hi_ok {
            Ok(())
        } else {
            Err(Error::WindowTooSmall {
                lo: self.lo,
                hi: self.hi,
                reason: format!("{n} steps from [{min}, {max}] reach an open edge"),
            })
        }
    }
}

/// Block-diagonal walk state `∑_i ρ_i ⊗ |i⟩⟨i|`. Blocks that are exactly
/// zero are not stored.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct WalkState {
    blocks: BTreeMap<Site, ComplexMatrix>,
}

impl WalkState {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn localized(site: Site, rho: &DensityMatrix) -> Self {
        Self::from_block(site, rho.matrix().clone())
    }

    pub fn from_block(site: Site, block: ComplexMatrix) -> Self {
        let mut s = Self::empty();
        s.insert(site, block);
        s
    }

    pub fn insert(&mut self, site: Site, block: ComplexMatrix) {
        if block.max_abs() == 0.0 {
            self.blocks.remove(&site);
        } else {
            self.blocks.insert(site, block);
        }
    }

    pub fn add_to(&mut self, site: Site, block: &ComplexMatrix) {
        match self.blocks.get_mut(&site) {
            Some(b) => b.add_assign_from(block),
            None => self.insert(site, block.clone()),
        }
    }

    pub fn remove(&mut self, site: Site) -> Option<ComplexMatrix> {
        self.blocks.remove(&site)
    }

    pub fn get(&self, site: Site) -> Option<&ComplexMatrix> {
        self.blocks.get(&site)
    }

    pub fn blocks(&self) -> &BTreeMap<Site, ComplexMatrix> {
        &self.blocks
    }

    pub fn trace_at(&self, site: Site) -> f64 {
        self.blocks.get(&site).map_or(0.0, |b| b.trace().re)
    }

    /// `∑_i tr ρ_i`.
    pub fn mass(&self) -> f64 {
        self.blocks.values().map(|b| b.trace().re).sum()
    }

    pub fn support(&self) -> Option<(Site, Site)> {
        Some((*self.blocks.keys().next()?, *self.blocks.keys().next_back()?))
    }
}

/// One application of the walk map.
pub fn step(w: &WalkSpec, s: &WalkState) -> Result<WalkState> {
    let mut next = WalkState::empty();
    for (&j, rho) in s.blocks() {
        if !w.contains(j) {
            return Err(Error::SiteOutsideWindow {
                site: j,
                lo: w.lo,
                hi: w.hi,
            });
        }
        if w.is_open_edge(j) {
            return Err(Error::WindowClipped { site: j });
        }
        for (i, b) in w.outgoing(j) {
            next.add_to(*i, &b.sandwich(rho));
        }
    }
    Ok(next)
}
