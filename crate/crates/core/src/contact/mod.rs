//! Contact relations over join-semilattices and the axiom checkers.

mod axioms;
mod d2;
mod report;

pub use axioms::{
    check, check_add, check_d1, check_d1plus, check_emp, check_ext, check_ref, check_sym,
    check_weak, reproduces,
};
pub use d2::{check_d2, check_d2_sequences, check_d2_subsets, d2_pair_pool, DEFAULT_D2_PAIR_LIMIT};
pub use report::{Axiom, AxiomReport, Witness};

use crate::bits::BitMatrix;
use crate::error::{Error, Result};
use crate::order::JoinSemilattice;

/// A symmetric binary relation on element indices.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ContactRelation {
    matrix: BitMatrix,
}

impl ContactRelation {
    /// Wraps a matrix, rejecting asymmetric input.
    pub fn from_matrix(matrix: BitMatrix) -> Result<Self> {
        match matrix.first_asymmetry() {
            Some((a, b)) => Err(Error::AsymmetricContact(a, b)),
            None => Ok(ContactRelation { matrix }),
        }
    }

    /// The symmetric closure of the given pairs.
    pub fn from_pairs(size: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut matrix = BitMatrix::new(size);
        for (a, b) in pairs {
            matrix.set(a, b, true);
            matrix.set(b, a, true);
        }
        ContactRelation { matrix }
    }

    pub fn empty(size: usize) -> Self {
        ContactRelation {
            matrix: BitMatrix::new(size),
        }
    }

    pub fn size(&self) -> usize {
        self.matrix.size()
    }

    #[inline]
    pub fn related(&self, a: usize, b: usize) -> bool {
        self.matrix.get(a, b)
    }

    /// Packed row of elements in contact with `a`.
    pub fn row(&self, a: usize) -> &[u64] {
        self.matrix.row(a)
    }

    pub fn matrix(&self) -> &BitMatrix {
        &self.matrix
    }

    /// Unordered related pairs `(a, b)` with `a <= b`, in index order.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let n = self.size();
        (0..n)
            .flat_map(|a| (a..n).map(move |b| (a, b)))
            .filter(|&(a, b)| self.related(a, b))
            .collect()
    }
}

/// The overlap contact: `a δ b` iff some nonzero element lies below both.
pub fn overlap_contact(s: &JoinSemilattice) -> ContactRelation {
    let meets = s.meets();
    let n = s.size();
    let mut matrix = BitMatrix::new(n);
    for a in 0..n {
        for b in 0..n {
            if meets.get(a, b) != s.zero() {
                matrix.set(a, b, true);
            }
        }
    }
    ContactRelation { matrix }
}

/// A join-semilattice with a symmetric contact relation. Which contact
/// axioms hold is left to the checkers.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ContactSemilattice {
    lattice: JoinSemilattice,
    contact: ContactRelation,
}

impl ContactSemilattice {
    pub fn new(lattice: JoinSemilattice, contact: ContactRelation) -> Result<Self> {
        if lattice.size() != contact.size() {
            return Err(Error::DimensionMismatch {
                semilattice: lattice.size(),
                contact: contact.size(),
            });
        }
        Ok(ContactSemilattice { lattice, contact })
    }

    pub fn with_overlap(lattice: JoinSemilattice) -> Self {
        let contact = overlap_contact(&lattice);
        ContactSemilattice { lattice, contact }
    }

    pub fn lattice(&self) -> &JoinSemilattice {
        &self.lattice
    }

    pub fn contact(&self) -> &ContactRelation {
        &self.contact
    }

    pub fn size(&self) -> usize {
        self.lattice.size()
    }

    #[inline]
    pub fn related(&self, a: usize, b: usize) -> bool {
        self.contact.related(a, b)
    }

    pub fn name(&self, a: usize) -> String {
        self.lattice.name(a).into_owned()
    }

    /// Whether the contact is exactly the overlap relation.
    pub fn is_overlap(&self) -> bool {
        self.contact == overlap_contact(&self.lattice)
    }

    /// The substructure on a join-closed family containing 0, with the
    /// inherited contact. Returns the kept source indices alongside.
    pub fn restrict(&self, members: &[usize]) -> Option<(ContactSemilattice, Vec<usize>)> {
        let (lattice, kept) = self.lattice.restrict(members)?;
        let k = kept.len();
        let mut matrix = BitMatrix::new(k);
        for (i, &a) in kept.iter().enumerate() {
            for (j, &b) in kept.iter().enumerate() {
                matrix.set(i, j, self.related(a, b));
            }
        }
        let contact = ContactRelation { matrix };
        Some((ContactSemilattice { lattice, contact }, kept))
    }
}
