//! The formula language: syntax, printing, expansion of derived connectives
//! and evaluation in finite algebras.

mod ast;
mod eval;
mod parse;

pub use ast::*;
pub use eval::{
    enumerate_valuations, evaluate, evaluate_direct, expand, render_valuation, Node, Program,
    Valuations, DEFAULT_WORK_BUDGET,
};
pub use parse::parse;
