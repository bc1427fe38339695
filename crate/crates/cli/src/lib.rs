//! Command-line interface over `equihom-core`: text formats for groups
//! and complexes, TSV reports for every computation, and the acceptance
//! suite behind `verify-all`.
//!
//! The library half exists so the integration tests can drive the same
//! code paths as the binary without spawning processes for everything.
//! All report text is assembled in memory first, which is what makes
//! `--output` atomic and repeated runs byte-identical.

#![warn(missing_docs)]

pub mod cli;
pub mod commands;
pub mod formats;
pub mod verify;
