//! Exact wall-crossing difference terms for Donaldson invariants of algebraic
//! surfaces with `b+ = 1` and irregularity `q`.
//!
//! Closed-form evaluators live in [`closed_forms`]; [`oracle_general`] evaluates
//! the general wall-crossing formula inside an explicit model of the cohomology
//! of `J × S` ([`graded_ring`], [`jacobian_model`]) and serves as an independent
//! check. [`verify`] bundles the property sweeps used by the CLI and the tests.

pub mod char_classes;
pub mod closed_forms;
pub mod error;
pub mod graded_ring;
pub mod io;
pub mod jacobian_model;
pub mod oracle_general;
pub mod rational;
pub mod surfaces;
pub mod verify;
pub mod wall_geometry;

pub use error::{Error, Result};
pub use rational::Q;
