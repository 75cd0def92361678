//! Command-line front end for `cohere-core`: assessment documents, the
//! `check`, `extend`, `lambda` and `table` commands and their reports.

pub mod commands;
pub mod document;
pub mod formula;
