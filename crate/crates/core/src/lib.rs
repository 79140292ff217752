//! A workbench for finite k-cyclic modal pseudocomplemented De Morgan
//! algebras: the generating algebras, their congruences and filters, two
//! consequence relations decided semantically, free-algebra counting and
//! exhaustive law checking.

pub mod algebra;
pub mod base;
pub mod cli;
pub mod consequence;
pub mod error;
pub mod filters;
pub mod finite;
pub mod formula;
pub mod free;
pub mod iso;
pub mod packed;
pub mod product;
pub mod subset;
pub mod verify;

pub use algebra::Algebra;
pub use base::{BaseElement, BaseFamily};
pub use error::{Error, Result};
pub use finite::FiniteAlgebra;
pub use product::{AlgElement, CyclicAlgebra};
pub use subset::AlgSubset;
