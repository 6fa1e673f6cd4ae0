//! Command-line companion to the `yangian` crate: root-multiset parsing,
//! JSON and text rendering, seeded corpora, and the subcommand drivers.

pub mod commands;
pub mod corpus;
pub mod parse;
pub mod render;
pub mod report;
