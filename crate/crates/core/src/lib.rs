//! Engine for migrating Python test suites from `unittest` to `pytest`.
//!
//! The crate is organised around a lossless source model: Python test files
//! are parsed into structural descriptions that keep exact byte spans into
//! the original text, and every rewrite is expressed as a span edit. Emitting
//! a file with no edits reproduces the input byte for byte.
//!
//! On top of the source model sit the pipeline stages:
//!
//! * [`detect`] scans git history for commits that migrated tests between
//!   the two frameworks.
//! * [`classify`] labels migration cases as simple or complex.
//! * [`transpile`] performs the rule-based migration itself.
//! * [`llm`] drives a matrix of model requests over the same cases and
//!   records the responses.
//! * [`eval`] executes migrated suites in a sandbox and scores the results.
//! * [`corpus`] ships a bundled set of migration cases plus a runnable
//!   micro-project they execute against.
//! * [`report`] aggregates evaluation records into a comparison report.

pub mod classify;
pub mod corpus;
pub mod detect;
pub mod eval;
pub mod llm;
pub mod report;
pub mod source_model;
pub mod text;
pub mod transpile;
