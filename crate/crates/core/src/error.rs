use std::fmt;

use thiserror::Error;

use crate::contact::AxiomReport;
use crate::logic::ParseError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// A semilattice law failing at a concrete witness (element indices).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LawViolation {
    Commutativity(usize, usize),
    Associativity(usize, usize, usize),
    Idempotence(usize),
    ZeroNotNeutral(usize),
}

impl fmt::Display for LawViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LawViolation::Commutativity(a, b) => write!(f, "commutativity fails at ({a}, {b})"),
            LawViolation::Associativity(a, b, c) => {
                write!(f, "associativity fails at ({a}, {b}, {c})")
            }
            LawViolation::Idempotence(a) => write!(f, "idempotence fails at {a}"),
            LawViolation::ZeroNotNeutral(a) => write!(f, "zero is not neutral for {a}"),
        }
    }
}

fn list<T: fmt::Display>(items: &[T]) -> String {
    items
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed join table: {0}")]
    MalformedTable(String),

    #[error("not a join-semilattice with zero: {}", list(.0))]
    Validation(Vec<LawViolation>),

    #[error("elements {0} and {1} have no unique least upper bound")]
    NoUniqueJoin(String, String),

    #[error("order is not antisymmetric: {0} <= {1} <= {0}")]
    NotAntisymmetric(String, String),

    #[error("declared zero {0} is not the least element")]
    ZeroNotLeast(String),

    #[error("declared top {0} is not the greatest element")]
    TopNotGreatest(String),

    #[error("powerset base size {base_size} exceeds the cap {cap}")]
    BaseTooLarge { base_size: usize, cap: usize },

    #[error("contact relation is not symmetric at ({0}, {1})")]
    AsymmetricContact(usize, usize),

    #[error("contact relation has size {contact} but the semilattice has {semilattice} elements")]
    DimensionMismatch { semilattice: usize, contact: usize },

    #[error("precondition {} failed: {}", .0.axiom, .0)]
    PreconditionFailed(Box<AxiomReport>),

    #[error("{pairs} unrelated pairs exceed the subset-scan budget of {limit}")]
    BudgetExceeded { pairs: usize, limit: usize },

    #[error("structure of size {size} exceeds the cap {cap}")]
    TooLarge { size: usize, cap: usize },

    #[error("requested size {requested} exceeds the enumeration cap {cap}")]
    CapExceeded { requested: usize, cap: usize },

    #[error(transparent)]
    Sentence(#[from] ParseError),

    #[error("line {line}: {message}")]
    StructureParse { line: usize, message: String },

    #[error("unknown fixture `{0}`")]
    UnknownFixture(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
