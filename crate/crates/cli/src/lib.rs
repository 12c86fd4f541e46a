//! Front end for the nilkoszul verification suite: configuration, checks and
//! versioned JSON reports.

pub mod config;
pub mod report;
pub mod suite;

pub use config::{RunConfig, Suite};
pub use report::Report;
pub use suite::{run_command, run_verification_suite};
