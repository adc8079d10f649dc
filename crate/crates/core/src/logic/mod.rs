//! Universal sentences in the language `+, 0, <=, =, C`: parsing,
//! evaluation, model enumeration and bounded countermodel search.

mod ast;
mod enumerate;
mod eval;
mod parser;
mod refute;

pub use ast::{Formula, Relation, Sentence, Term};
pub use enumerate::{
    all_symmetric_structures, enumerate_lattices, enumerate_structures, enumerate_structures_capped, lattices_of_size,
    naive_structure_count, Filter, DEFAULT_ENUMERATION_CAP, MAX_LATTICE_SIZE, NAIVE_ORACLE_CAP,
};
pub use eval::{describe_assignment, eval, eval_at, Evaluation};
pub use parser::{parse_sentence, ParseError};
pub use refute::{refute, refute_with, CountermodelResult, SearchOptions, Theory};
