//! Text input and report output.

pub mod parser;
pub mod report;

pub use parser::{parse_system, Form, ParsedSystem};
