//! Parser, pretty-printer and JSON dump for the AgentSpeak subset used by the
//! agent programs (`.asl` files).

mod ast;
mod json;
mod lexer;
mod parser;
mod print;

pub use ast::{BodyStep, Performative, Plan, Program};
pub use json::program_to_json;
pub use parser::{parse_formula, parse_program, parse_term, ParseError};
pub use print::pretty_print;
