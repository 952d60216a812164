//! Command-line front end for `smoothq`: distribution specs, sample files,
//! CSV/JSON records and a parallel Monte Carlo runner.

pub mod commands;
pub mod dist_spec;
pub mod error;
pub mod input;
pub mod parallel;
pub mod records;

pub use dist_spec::DistSpec;
pub use error::CliError;
