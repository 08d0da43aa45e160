//! Library surface of the command-line frontend, split out so the parser,
//! evaluator and command dispatch are directly testable.

pub mod ast;
pub mod commands;
pub mod eval;
pub mod parser;
pub mod render;
