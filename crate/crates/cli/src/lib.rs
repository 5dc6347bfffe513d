//! Batch front end: JSON job documents in, JSON result documents out.

pub mod job;
pub mod parse;
pub mod run;

pub use job::{Command, JobResult, JobSpec};
pub use run::{execute, run, RunError};
