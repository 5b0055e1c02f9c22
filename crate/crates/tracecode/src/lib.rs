//! File formats, reports and command implementations for the `tracecode`
//! binary. Everything here returns strings or plain data; the binary only
//! parses flags, writes output and picks the exit status.

pub mod config;
pub mod export;
pub mod report;
pub mod shares;
pub mod verify;

pub use config::{Format, RunConfig, UsageError};
