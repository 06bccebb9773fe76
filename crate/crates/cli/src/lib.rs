//! Command-line front end for the `nlip` library.
//!
//! One command per invocation; a JSON config file may supply any field of
//! [`RunConfig`] and flags override it. Exit codes: 0 ok, 1 usage or
//! validation, 2 numerical failure, 3 failed verification.

pub mod config;
pub mod error;
pub mod exec;
pub mod output;
pub mod verify;

pub use config::{linspace, parse_config, Command, Parsed, RunConfig, Suite};
pub use error::{CliError, CliResult};
pub use exec::{execute, resolve_domain, run, Outcome};
