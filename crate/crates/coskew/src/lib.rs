//! Experiment drivers, CSV/JSON reports and the `coskew` command-line tool
//! built on [`coskew_core`].

// Negated comparisons are deliberate: NaN must fail the range checks.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod error;
pub mod experiments;
pub mod report;
pub mod stats;

pub use error::{AppError, Result};
