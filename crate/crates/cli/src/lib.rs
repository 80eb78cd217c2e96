//! Command-line front end for the motive engine: an expression language,
//! an evaluator over it, and the `motivecalc` subcommands.

pub mod cli;
pub mod eval;
pub mod expr;
pub mod report;

pub use cli::{run, Outcome};
