//! A line-oriented text format for partial actions on algebras and a batch
//! runner producing text or JSON reports.

pub mod ast;
pub mod elaborate;
pub mod element;
pub mod error;
pub mod parse;
pub mod print;
pub mod report;
pub mod run;

pub use ast::SpecDocument;
pub use error::{CliError, Result};
pub use parse::parse_spec;
pub use print::print_spec;
pub use report::{emit, Format, Report};
pub use run::{check, run};
