//! Library surface of the command-line front end; the binary is a thin
//! wrapper so that integration tests can reuse the report and file types.

pub mod cli;
pub mod commands;
pub mod error;
pub mod io;
pub mod report;
