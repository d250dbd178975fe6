//! IO companion to `wavegrow-core`: run configuration, CSV/JSON emission,
//! binary checkpoints, run-directory management, and the CLI commands.

pub mod checkpoint;
pub mod commands;
pub mod config;
pub mod csvio;
pub mod jsonout;
pub mod rundir;
