//! File formats, kernel cache, seeded generators and subcommand bodies for the
//! `rodrigues` command-line tool.

pub mod cache;
pub mod commands;
pub mod json;
pub mod random;
