//! File formats, seeded generators, check suites and the command
//! implementations behind the `odakit` binary.

pub mod commands;
pub mod error;
pub mod formats;
pub mod limits;
pub mod random;
pub mod report;
pub mod suites;

pub use error::{CliError, Result};
pub use limits::Limits;
pub use report::{RunReport, Status};
