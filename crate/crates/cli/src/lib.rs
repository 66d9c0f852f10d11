//! Batch front end for the `schwarz` verification kernel: input files,
//! seeded runs, reports and exit codes.

pub mod commands;
pub mod config;
pub mod error;
pub mod input;
pub mod report;

pub use commands::{cmd_axioms, cmd_continuity, cmd_cs, cmd_metric, cmd_replay, InputFile};
pub use config::{DimRange, RunConfig};
pub use error::CliError;
pub use report::{Report, Verdict};
