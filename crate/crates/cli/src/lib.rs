//! Command-line front-end: document format, reports and command dispatch.

pub mod commands;
pub mod document;
pub mod report;

pub use commands::{run, Outcome};
