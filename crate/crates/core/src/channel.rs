// SPDX-License-Identifier: Apache-2.0

//! Completely positive maps in Kraus form.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{kron, ComplexMatrix, C64, DEFAULT_TOL};

/// `ρ ↦ ∑ V_i ρ V_i*` on `d×d` matrices.
#[derive(Debug, Clone, PartialEq)]
pub struct KrausChannel {
    dim: usize,
    kraus: Vec<ComplexMatrix>,
    tp_tol: f64,
    non_tp: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChannelReport {
    pub trace_preserving: bool,
    pub unital: bool,
    /// `‖∑ V_i* V_i − I‖_max`
    pub tp_residual: f64,
    /// `‖∑ V_i V_i* − I‖_max`
    pub unital_residual: f64,
}

fn check_dims(kraus: &[ComplexMatrix]) -> Result<usize> {
    let first = kraus.first().ok_or(Error::EmptyKrausList)?;
    let d = first.require_square()?;
    for k in kraus {
        let n = k.require_square()?;
        if n != d {
            return Err(Error::DimensionMismatch {
                context: "kraus operator",
                expected: d,
                found: n,
            });
        }
    }
    Ok(d)
}

fn tp_residual(kraus: &[ComplexMatrix], d: usize) -> f64 {
    let mut acc = ComplexMatrix::zeros(d, d);
    for v in kraus {
        acc.add_assign_from(&(&v.adjoint() * v));
    }
    acc.max_abs_diff(&ComplexMatrix::identity(d))
}

fn unital_residual(kraus: &[ComplexMatrix], d: usize) -> f64 {
    let mut acc = ComplexMatrix::zeros(d, d);
    for v in kraus {
        acc.add_assign_from(&(v * &v.adjoint()));
    }
    acc.max_abs_diff(&ComplexMatrix::identity(d))
}

impl KrausChannel {
    /// Validated channel. Fails with the TP residual if `∑ V_i* V_i` is
    /// further than `tol` from the identity.
    pub fn new(kraus: Vec<ComplexMatrix>, tol: f64) -> Result<Self> {
        let dim = check_dims(&kraus)?;
        let residual = tp_residual(&kraus, dim);
        if residual > tol {
            return Err(Error::TpViolation { residual });
        }
        Ok(Self {
            dim,
            kraus,
            tp_tol: tol,
            non_tp: false,
        })
    }

    /// A CP map that need not be trace-preserving. Only dimensions are
    /// checked; the result is flagged [`is_non_tp`](Self::is_non_tp) when the
    /// TP residual exceeds the default tolerance.
    pub fn new_unchecked(kraus: Vec<ComplexMatrix>) -> Result<Self> {
        let dim = check_dims(&kraus)?;
        let non_tp = tp_residual(&kraus, dim) > DEFAULT_TOL;
        Ok(Self {
            dim,
            kraus,
            tp_tol: DEFAULT_TOL,
            non_tp,
        })
    }

    pub fn identity(d: usize) -> Self {
        Self {
            dim: d,
            kraus: vec![ComplexMatrix::identity(d)],
            tp_tol: DEFAULT_TOL,
            non_tp: false,
        }
    }

    /// Conjugation by a single unitary.
    pub fn unitary(u: ComplexMatrix, tol: f64) -> Result<Self> {
        Self::new(vec![u], tol)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn kraus(&self) -> &[ComplexMatrix] {
        &self.kraus
    }

    pub fn into_kraus(self) -> Vec<ComplexMatrix> {
        self.kraus
    }

    pub fn tp_tol(&self) -> f64 {
        self.tp_tol
    }

    pub fn is_non_tp(&self) -> bool {
        self.non_tp
    }

    pub fn validate(&self, tol: f64) -> ChannelReport {
        let tp = tp_residual(&self.kraus, self.dim);
        let un = unital_residual(&self.kraus, self.dim);
        ChannelReport {
            trace_preserving: tp <= tol,
            unital: un <= tol,
            tp_residual: tp,
            unital_residual: un,
        }
    }

    pub fn is_unital(&self, tol: f64) -> bool {
        unital_residual(&self.kraus, self.dim) <= tol
    }

    pub fn apply(&self, rho: &ComplexMatrix) -> Result<ComplexMatrix> {
        let n = rho.require_square()?;
        if n != self.dim {
            return Err(Error::DimensionMismatch {
                context: "state for channel",
                expected: self.dim,
                found: n,
            });
        }
        let mut out = ComplexMatrix::zeros(n, n);
        for v in &self.kraus {
            out.add_assign_from(&v.sandwich(rho));
        }
        Ok(out)
    }

    /// `[Φ] = ∑ V_i ⊗ conj(V_i)`, acting on row-major `vec(ρ)`.
    pub fn matrix_rep(&self) -> ComplexMatrix {
        matrix_rep_of(&self.kraus)
    }

    /// Kraus list of the adjoint map `X ↦ ∑ V_i* X V_i`. Unital exactly when
    /// `self` is trace-preserving, and trace-preserving exactly when `self`
    /// is unital.
    pub fn adjoint(&self) -> Self {
        let kraus: Vec<_> = self.kraus.iter().map(ComplexMatrix::adjoint).collect();
        let non_tp = unital_residual(&self.kraus, self.dim) > DEFAULT_TOL;
        Self {
            dim: self.dim,
            kraus,
            tp_tol: self.tp_tol,
            non_tp,
        }
    }

    /// Replaces the Kraus list by `V'_j = ∑_i w_{ji} V_i`. For an isometry
    /// (`W* W = I`) the map itself is unchanged.
    pub fn remix(&self, w: &ComplexMatrix) -> Result<Self> {
        if w.cols() != self.kraus.len() {
            return Err(Error::DimensionMismatch {
                context: "remixing matrix columns",
                expected: self.kraus.len(),
                found: w.cols(),
            });
        }
        let kraus = (0..w.rows())
            .map(|j| {
                let mut acc = ComplexMatrix::zeros(self.dim, self.dim);
                for (i, v) in self.kraus.iter().enumerate() {
                    acc.add_assign_from(&v.scale(w.get(j, i)));
                }
                acc
            })
            .collect();
        Ok(Self {
            dim: self.dim,
            kraus,
            tp_tol: self.tp_tol,
            non_tp: self.non_tp,
        })
    }
}

/// `∑ V ⊗ conj(V)` over an arbitrary list; empty lists are rejected upstream.
pub fn matrix_rep_of(kraus: &[ComplexMatrix]) -> ComplexMatrix {
    let d = kraus[0].rows();
    let mut rep = ComplexMatrix::zeros(d * d, d * d);
    for v in kraus {
        rep.add_assign_from(&kron(v, &v.conj()));
    }
    rep
}

/// `a ∘ b`: apply `b` first. Kraus list `{A_i B_j}`, so `[a∘b] = [a]·[b]`.
pub fn compose(a: &KrausChannel, b: &KrausChannel) -> Result<KrausChannel> {
    if a.dim != b.dim {
        return Err(Error::DimensionMismatch {
            context: "channel composition",
            expected: a.dim,
            found: b.dim,
        });
    }
    let kraus: Vec<ComplexMatrix> = a
        .kraus
        .iter()
        .flat_map(|x| b.kraus.iter().map(move |y| x * y))
        .collect();
    let non_tp = a.non_tp || b.non_tp;
    Ok(KrausChannel {
        dim: a.dim,
        kraus,
        tp_tol: a.tp_tol.max(b.tp_tol),
        non_tp,
    })
}

/// `∑ w_k Φ_k` with Kraus operators `√w_k V_i^{(k)}`.
pub fn convex_mix(weights: &[f64], chans: &[KrausChannel]) -> Result<KrausChannel> {
    if weights.len() != chans.len() {
        return Err(Error::WeightViolation(format!(
            "{} weights for {} channels",
            weights.len(),
            chans.len()
        )));
    }
    let first = chans.first().ok_or(Error::EmptyKrausList)?;
    if let Some(w) = weights.iter().find(|w| !(**w >= 0.0)) {
        return Err(Error::WeightViolation(format!("negative weight {w}")));
    }
    let total: f64 = weights.iter().sum();
    if (total - 1.0).abs() > 1e-12 {
        return Err(Error::WeightViolation(format!("weights sum to {total}")));
    }
    let mut kraus = Vec::new();
    for (w, ch) in weights.iter().zip(chans) {
        if ch.dim != first.dim {
            return Err(Error::DimensionMismatch {
                context: "convex mixture",
                expected: first.dim,
                found: ch.dim,
            });
        }
        let s = C64::new(w.sqrt(), 0.0);
        kraus.extend(ch.kraus.iter().map(|v| v.scale(s)));
    }
    Ok(KrausChannel {
        dim: first.dim,
        kraus,
        tp_tol: first.tp_tol,
        non_tp: chans.iter().any(|c| c.non_tp),
    })
}
