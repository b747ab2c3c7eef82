//! Command-line front end for `matcomp`: an expression language over the
//! matrix-composition algebras, canonical printing, and the seeded
//! verification suites.

pub mod eval;
pub mod expr;
pub mod suite;

use thiserror::Error;

pub use eval::{eval_element, eval_str, evaluate, Value};
pub use expr::{parse, Expr, Pos};
pub use suite::{run_suite, Report, Suite};

#[derive(Debug, Error)]
pub enum CliError {
    /// Syntax and literal validation errors, already located.
    #[error(transparent)]
    Syntax(#[from] matcomp::Error),
    #[error("type error at {pos}: {message}")]
    Type { pos: Pos, message: String },
    #[error("at {pos}: {source}")]
    Eval { pos: Pos, source: matcomp::Error },
}
