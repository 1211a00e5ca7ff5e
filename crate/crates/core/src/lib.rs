// SPDX-License-Identifier: Apache-2.0

//! PQ-channels and open quantum random walks on the integer lattice.

pub mod channel;
pub mod error;
pub mod io;
pub mod linalg;
pub mod oqrw;
pub mod pq;
pub mod random;
pub mod stationary;

pub use channel::{compose, convex_mix, ChannelReport, KrausChannel};
pub use error::{Error, Result};
pub use linalg::{ComplexMatrix, DensityMatrix, PositiveOperator, C64};
pub use oqrw::{monitored_run, step, ReturnSeries, Site, WalkSpec, WalkState};
pub use pq::{classify_spectral, pq_pattern, PqDecomposition, PqPattern, SpectralClass};
pub use stationary::{PositiveRecurrenceReport, RecurrenceVerdict, StationaryOperator};
