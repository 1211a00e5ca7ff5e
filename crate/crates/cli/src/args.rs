// SPDX-License-Identifier: Apache-2.0

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "pqwalk", version, about = "PQ-channels and open quantum random walks")]
pub struct Cli {
    /// Numerical tolerance for validation and classification.
    #[arg(long, global = true, default_value_t = 1e-10)]
    pub tol: f64,

    /// Seed for random test families.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Output format; each command has its own default.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Appendix,
    Theorem51,
    AmplitudeDamping,
    Barrier,
    LandauStreater,
    Classical,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print a gallery channel as JSON, or list the gallery.
    Gallery {
        name: Option<String>,
        /// Parameters as `key=value`.
        params: Vec<String>,
        #[arg(long = "param")]
        param: Vec<String>,
        #[arg(long)]
        list: bool,
    },
    /// Matrix representation of a channel.
    Repr {
        /// `gallery:<name>` or a channel JSON file.
        channel: String,
        params: Vec<String>,
    },
    /// PQ decomposition and spectral class of a channel.
    Classify { channel: String, params: Vec<String> },
    /// Monitored evolution of a walk.
    Simulate {
        /// Walk JSON file or `gallery:<name>`.
        #[arg(long)]
        walk: String,
        /// Density matrix JSON file, `mixed`, `random` or `diag:a,b,...`.
        #[arg(long)]
        rho0: Option<String>,
        #[arg(long)]
        steps: u64,
        /// Site where `rho0` is placed.
        #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
        start: i64,
        /// Site whose block is removed after every step (default: start).
        #[arg(long, allow_negative_numbers = true)]
        monitor: Option<i64>,
        #[arg(long = "param")]
        param: Vec<String>,
    },
    /// Exact first-return probabilities against the closed forms.
    FirstReturn {
        #[arg(long)]
        walk: String,
        #[arg(long)]
        rho0: Option<String>,
        #[arg(long)]
        kmax: u64,
        #[arg(long = "param")]
        param: Vec<String>,
    },
    /// Closed-form return series and recurrence verdict for Cases 1-3.
    Recurrence {
        #[arg(long)]
        case: u8,
        /// First squared modulus (Case 1: |l11|²).
        #[arg(long, visible_alias = "l11sq")]
        x: f64,
        /// Second squared modulus (Case 1: |l22|²). Defaults to `x`, or to
        /// `1 − x` for Case 2.
        #[arg(long, visible_alias = "l22sq")]
        y: Option<f64>,
        #[arg(long)]
        kmax: u64,
        /// `ρ11` of the initial state; `ρ22 = 1 − ρ11`.
        #[arg(long, default_value_t = 0.5)]
        rho11: f64,
    },
    /// Truncated `ρ_st` and positive-recurrence evidence for a site.
    Stationary {
        #[arg(long)]
        walk: String,
        #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
        site: i64,
        #[arg(long)]
        rho: Option<String>,
        #[arg(long)]
        horizon: u64,
        /// Also write the per-site traces as CSV here.
        #[arg(long)]
        traces: Option<PathBuf>,
        #[arg(long = "param")]
        param: Vec<String>,
    },
    /// Stationarity residual of a candidate block operator.
    CheckStationary {
        #[arg(long)]
        walk: String,
        #[arg(long)]
        candidate: String,
    },
    /// Reproduce a named set of reference numbers.
    Repro {
        #[arg(value_enum)]
        suite: Suite,
    },
}
