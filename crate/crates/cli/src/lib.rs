//! Command implementations behind the `unram` binary. They write to any
//! `io::Write` and return the process exit status so they can be tested
//! without spawning a process.

pub mod breakdown;
pub mod commands;
pub mod reference;

pub use commands::{cmd_breakdown, cmd_compute, cmd_verify, ExitStatus, DEFAULT_MAX_DEGREE};
pub use reference::{ReferenceTable, TableError, EMBEDDED_TABLE};
