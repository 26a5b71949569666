//! Analysis of second-order linear recurrences modulo `m`.
//!
//! The crate computes periods and companion-matrix orders, decides residue
//! completeness and uniform distribution, enumerates fundamental systems of
//! periods, and classifies the full set of moduli over which a recurrence
//! `w_n = q*w_{n-1} + w_{n-2}` hits every residue class.

pub mod arith;
pub mod classifier;
pub mod completeness;
pub mod error;
pub mod fundamental;
pub mod order;
pub mod recurrence;
pub mod report;
pub mod variant_u;
pub mod verify;

pub use error::{Error, Result};
pub use recurrence::{
    companion_power, find_period, generate, invariant_of, CompanionMatrix, Invariant,
    InvariantClass, Period, RecurrenceSpec, Variant,
};
