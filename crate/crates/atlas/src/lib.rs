//! Command-line front end for `atlas-core`: block files, reports, DOT output
//! and the oracle sweep.

pub mod cli;
pub mod corpus;
pub mod dot;
pub mod input;
pub mod report;
pub mod verify;
