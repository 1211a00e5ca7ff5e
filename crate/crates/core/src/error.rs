// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong in the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {context}: expected {expected}, found {found}")]
    DimensionMismatch {
        context: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix of order {0} is not the representation of a map on square matrices")]
    NotSquareOfSquare(usize),

    #[error("kraus list is empty")]
    EmptyKrausList,

    #[error("kraus operators are not trace-preserving (residual {residual:.3e})")]
    TpViolation { residual: f64 },

    #[error("convex weights invalid: {0}")]
    WeightViolation(String),

    #[error("not a PQ representation (pattern residual {residual:.3e}, stochastic defect {stochastic_defect:.3e})")]
    NotPq {
        residual: f64,
        stochastic_defect: f64,
    },

    #[error("candidate kraus matrix #{index} is not a PQ-matrix")]
    NotPqMatrix { index: usize },

    #[error("not a valid {what} (residual {residual:.3e})")]
    InvalidState { what: &'static str, residual: f64 },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("unknown gallery entry `{0}`")]
    UnknownGallery(String),

    #[error("parameter `{name}` = {value} out of range: {range}")]
    ParameterOutOfRange {
        name: String,
        value: f64,
        range: &'static str,
    },

    #[error("missing parameter `{0}`")]
    MissingParameter(String),

    #[error("empty window [{lo}, {hi}]")]
    EmptyWindow { lo: i64, hi: i64 },

    #[error("transition completeness fails at site {site} (residual {residual:.3e})")]
    CompletenessViolation { site: i64, residual: f64 },

    #[error("transition {from} -> {to} leaves the window [{lo}, {hi}]")]
    TransitionOutsideWindow { from: i64, to: i64, lo: i64, hi: i64 },

    #[error("window [{lo}, {hi}] too small: {reason}")]
    WindowTooSmall { lo: i64, hi: i64, reason: String },

    #[error("mass reached the truncated window edge at site {site}")]
    WindowClipped { site: i64 },

    #[error("site {site} lies outside the window [{lo}, {hi}]")]
    SiteOutsideWindow { site: i64, lo: i64, hi: i64 },

    #[error("operator is not stationary (residual {residual:.3e})")]
    NotStationary { residual: f64 },

    #[error("requested {what} = {requested} exceeds the cap {cap}")]
    CapExceeded {
        what: &'static str,
        requested: u64,
        cap: u64,
    },

    #[error("arithmetic overflow computing {0}")]
    Overflow(String),

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("malformed input: {0}")]
    Parse(String),
}

impl Error {
    /// Stable machine-readable name of the violated contract.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DimensionMismatch { .. } => "dimension_mismatch",
            Error::NotSquare { .. } => "not_square",
            Error::NotSquareOfSquare(_) => "not_square_of_square",
            Error::EmptyKrausList => "empty_kraus_list",
            Error::TpViolation { .. } => "tp_violation",
            Error::WeightViolation(_) => "weight_violation",
            Error::NotPq { .. } => "not_pq",
            Error::NotPqMatrix { .. } => "not_pq_matrix",
            Error::InvalidState { .. } => "invalid_state",
            Error::Unsupported(_) => "unsupported",
            Error::UnknownGallery(_) => "unknown_gallery",
            Error::ParameterOutOfRange { .. } => "parameter_out_of_range",
            Error::MissingParameter(_) => "missing_parameter",
            Error::EmptyWindow { .. } => "empty_window",
            Error::CompletenessViolation { .. } => "completeness_violation",
            Error::TransitionOutsideWindow { .. } => "transition_outside_window",
            Error::WindowTooSmall { .. } => "window_too_small",
            Error::WindowClipped { .. } => "window_clipped",
            Error::SiteOutsideWindow { .. } => "site_outside_window",
            Error::NotStationary { .. } => "not_stationary",
            Error::CapExceeded { .. } => "cap_exceeded",
            Error::Overflow(_) => "overflow",
            Error::Numerical(_) => "numerical",
            Error::Parse(_) => "parse",
        }
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
