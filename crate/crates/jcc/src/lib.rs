//! Front end for `jcc-core`: the `.cc` vernacular, its elaboration into
//! kernel terms, and the command-line driver.

pub mod ast;
pub mod driver;
pub mod elab;
pub mod lexer;
pub mod parser;
pub mod report;
pub mod session;

pub use driver::{run_cli, run_cli_with};
pub use parser::{parse_file, parse_term};

/// Prints a closed term in the surface syntax.
pub fn pretty_print(t: &jcc_core::syntax::Term) -> String {
    jcc_core::pretty::print(t)
}
