//! The `.mvw` text format for finite MV-algebras and MVW-rigs, and the
//! JSON documents the command-line tool reads and writes.
//!
//! ```
//! let rigs = mvw_dsl::load(
//!     "algebra Z2 { elements: 0..2 zero: 0 neg(x) = 2 - x add(x, y) = min(2, x + y) mul(x, y) = min(2, x * y) }",
//!     &mvw::Limits::default(),
//! )
//! .unwrap();
//! assert_eq!(rigs[0].mv().size(), 3);
//! ```

pub mod ast;
pub mod diagnostic;
pub mod elaborate;
pub mod json;
pub mod lexer;
pub mod parser;
pub mod pretty;

pub use diagnostic::{Diagnostic, Diagnostics, Span};
pub use elaborate::{elaborate_file, elaborate_file_unchecked, ElabError};
pub use json::SchemaError;
pub use parser::parse;

use mvw::{Limits, Structure};

/// Parses and elaborates a whole file, checking every axiom.
pub fn load(text: &str, limits: &Limits) -> Result<Vec<Structure>, ElabError> {
    let file = parse(text).map_err(ElabError::Invalid)?;
    elaborate_file(&file, limits)
}
