//! Command-line front end: expression parser, map files, seeded corpora and
//! command dispatch.

pub mod commands;
pub mod corpus;
pub mod mapfile;
pub mod parse;

pub use commands::{run, Outcome, SEED_ENV};
