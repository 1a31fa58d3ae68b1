//! Lexing and parsing of `.mj` sources into position-annotated ASTs.

pub mod ast;
pub mod lexer;
pub mod parser;
pub mod token;

pub use ast::Unit;
pub use lexer::tokenize;
pub use parser::{parse_expression, parse_unit};

use crate::diag::Diagnostic;

/// Lex and parse one source file.
pub fn parse_source(source: &str, file: &str) -> Result<Unit, Vec<Diagnostic>> {
    let tokens = tokenize(source, file)?;
    parse_unit(tokens)
}
