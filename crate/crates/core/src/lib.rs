//! Evaluation criteria for infinite utility streams.
//!
//! The crate computes the constant equivalent `I(x)` of a bounded stream
//! under exponential discounting, maxmin discounting over a set of discount
//! factors, variational discounting with a cost over discount factors, and
//! several patient (non-discounting) criteria. Around those evaluators it
//! provides a property-test harness for the behavioral axioms, a fixed-point
//! solver for normalized eigenvectors of positive operators, and expert-panel
//! aggregation with cost recovery.

pub mod axioms;
pub mod cli;
pub mod discounting;
pub mod eigen;
pub mod error;
pub mod gen;
pub mod panel;
pub mod patient;
pub mod streams;

pub use discounting::{CostFunction, Criterion, DeltaSet};
pub use error::{Error, Result};
pub use streams::{Permutation, Stream, Tail};
