// SPDX-License-Identifier: Apache-2.0

//! Open quantum random walks on a window of ℤ.

pub mod cases;
pub mod gallery;
pub mod monitor;
pub mod paths;
pub mod walk;

pub use cases::{
    case2_fk, case2_fk_max, case_formula, case_series, classical_limit, classical_series, partial_sums,
    theorem51_verdict, CaseParams, FkMaximum, Theorem51Verdict, VerdictReason,
};
pub use gallery::{walk_gallery, WALK_GALLERY_NAMES};
pub use monitor::{monitored_run, monitored_run_from, ReturnSeries};
pub use paths::{
    alpha, alpha_f64, alpha_u64, case2_counts, case2_counts_f64, first_return_exact, first_return_exact_capped,
    DEFAULT_KMAX_CAP,
};
pub use walk::{step, Site, WalkSpec, WalkState};
