//! Command-line front end: expression parsing, JSON reports and sweeps.

pub mod commands;
pub mod parse;
pub mod report;

pub use commands::run;
pub use parse::{parse_bivar, parse_expr, parse_poly, render, Context, Expr, ParseError};
