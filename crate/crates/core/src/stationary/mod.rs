// SPDX-License-Identifier: Apache-2.0

//! Stationary operators, first-return operators and recurrence evidence.

mod barrier;
mod communication;
mod operators;
mod recurrence;

pub use barrier::barrier_walk;
pub use communication::{communication_structure, CommunicationReport, TestMode};
pub use operators::{
    first_return_operators, is_stationary, rho_st, FirstReturnOperators, RhoSt, StationarityReport,
    StationaryOperator,
};
pub use recurrence::{
    dominance_check, positive_recurrence_check, DominanceReport, PositiveRecurrenceReport, RecurrenceVerdict,
};
