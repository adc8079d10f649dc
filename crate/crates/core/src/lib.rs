//! Weak contact join-semilattices: axiom checkers, representations in
//! powerset algebras, universal sentences and countermodel search.

pub mod bits;
pub mod cli;
pub mod contact;
pub mod error;
pub mod fixtures;
pub mod logic;
pub mod order;
pub mod representation;
pub mod structure_file;

pub use error::{Error, Result};
