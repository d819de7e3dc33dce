//! Experiment runner for `randteam-core`: configuration files, published
//! table reproductions, compatibility reports and a parallel Monte-Carlo
//! estimator.

#![allow(clippy::needless_range_loop, clippy::neg_cmp_op_on_partial_ord)]

pub mod config;
pub mod error;
pub mod ledger;
pub mod parallel;
pub mod report;
pub mod reproduce;
pub mod run;

pub use config::{ExperimentConfig, Mode};
pub use error::{Result, RunError};
pub use report::{CompatRecord, Format, Report, Status};
pub use reproduce::Settings;
