//! Named example structures.
//!
//! * `m3_overlap`, `m3_partial`, `m3_delta`: the five-element modular
//!   lattice with three atoms under three contacts.
//! * `b8`: the eight-element Boolean algebra whose atom `c` is unrelated
//!   to `a` and `b`.
//! * `free_d`: the join-semilattice generated by `c, d, e, f, x, y` under
//!   eight absorption relations (see [`free_d`]).
//! * `z4z4`: subgroups of `Z4 × Z4` with overlap contact.

mod free_d;
mod z4z4;

pub use free_d::{free_d_elements, free_d_leq_oracle, free_d_notes, NormalFormElement};
pub use z4z4::{subgroups_by_filter, subgroups_by_generators, verify_z4z4_embedding, Z4Report};

use crate::contact::{overlap_contact, ContactRelation, ContactSemilattice};
use crate::error::{Error, Result};
use crate::order::{names, JoinSemilattice};

pub const FIXTURE_NAMES: [&str; 6] = ["m3_overlap", "m3_partial", "m3_delta", "b8", "free_d", "z4z4"];

/// A fixture with any notes produced while building it.
#[derive(Debug, Clone)]
pub struct Fixture {
    pub name: &'static str,
    pub structure: ContactSemilattice,
    pub notes: Vec<String>,
}

pub fn fixture(name: &str) -> Result<ContactSemilattice> {
    load_fixture(name).map(|f| f.structure)
}

pub fn load_fixture(name: &str) -> Result<Fixture> {
    let (name, structure, notes) = match name {
        "m3_overlap" => ("m3_overlap", ContactSemilattice::with_overlap(m3()), vec![]),
        "m3_partial" => ("m3_partial", m3_with(&[(A, B)]), vec![]),
        "m3_delta" => ("m3_delta", m3_with(&[(A, B), (A, C)]), vec![]),
        "b8" => ("b8", b8(), vec![]),
        "free_d" => ("free_d", free_d::free_d(), free_d_notes()),
        "z4z4" => ("z4z4", z4z4::z4z4(), vec![]),
        other => return Err(Error::UnknownFixture(other.to_string())),
    };
    Ok(Fixture {
        name,
        structure,
        notes,
    })
}

const A: usize = 1;
const B: usize = 2;
const C: usize = 3;

/// `0, a, b, c, 1`.
pub fn m3() -> JoinSemilattice {
    let le = [(0, A), (0, B), (0, C), (A, 4), (B, 4), (C, 4)];
    JoinSemilattice::from_order(names(&["0", "a", "b", "c", "1"]), 0, le)
        .expect("M3 is a lattice")
}

/// M3 with the overlap contact plus the given atom pairs.
fn m3_with(extra: &[(usize, usize)]) -> ContactSemilattice {
    let s = m3();
    let mut pairs = overlap_contact(&s).pairs();
    pairs.extend_from_slice(extra);
    let contact = ContactRelation::from_pairs(s.size(), pairs);
    ContactSemilattice::new(s, contact).expect("dimensions agree")
}

/// The cube over atoms `a, b, c`, elements ordered
/// `0, a, b, c, a+b, a+c, b+c, 1`; every pair of nonzero elements is
/// related except `c` with `a` and `c` with `b`.
pub fn b8() -> ContactSemilattice {
    let masks: [usize; 8] = [0b000, 0b001, 0b010, 0b100, 0b011, 0b101, 0b110, 0b111];
    let index = |m: usize| masks.iter().position(|&x| x == m).unwrap();
    let table = (0..8)
        .flat_map(|i| (0..8).map(move |j| (i, j)))
        .map(|(i, j)| index(masks[i] | masks[j]))
        .collect();
    let s = JoinSemilattice::from_table(
        names(&["0", "a", "b", "c", "a+b", "a+c", "b+c", "1"]),
        0,
        table,
    )
    .expect("cube is a semilattice");
    let unrelated = |x: usize, y: usize| matches!((x.min(y), x.max(y)), (A, C) | (B, C));
    let pairs: Vec<(usize, usize)> = s
        .nonzero()
        .flat_map(|x| s.nonzero().map(move |y| (x, y)))
        .filter(|&(x, y)| !unrelated(x, y))
        .collect();
    let contact = ContactRelation::from_pairs(8, pairs);
    ContactSemilattice::new(s, contact).expect("dimensions agree")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::contact::{check_add, check_d1, check_weak, AxiomReport, Witness};

    #[test]
    fn all_fixtures_load_and_unknown_is_rejected() {
        for name in FIXTURE_NAMES {
            let f = load_fixture(name).unwrap();
            assert_eq!(f.name, name);
        }
        assert!(matches!(fixture("m4"), Err(Error::UnknownFixture(_))));
    }

    #[test]
    fn b8_contact_shape() {
        let cs = b8();
        assert_eq!(cs.size(), 8);
        let missing: Vec<(usize, usize)> = cs
            .lattice()
            .nonzero()
            .flat_map(|x| cs.lattice().nonzero().map(move |y| (x, y)))
            .filter(|&(x, y)| !cs.related(x, y))
            .collect();
        assert_eq!(missing, vec![(1, 3), (2, 3), (3, 1), (3, 2)]);
        assert!(check_weak(&cs).iter().all(AxiomReport::passed));
    }

    #[test]
    fn m3_delta_contact_shape() {
        let cs = fixture("m3_delta").unwrap();
        assert_eq!(cs.size(), 5);
        assert!(cs.related(A, B) && cs.related(A, C) && !cs.related(B, C));
        assert!(check_weak(&cs).iter().all(AxiomReport::passed));
        assert!(check_add(&cs).passed());
        assert_eq!(check_d1(&cs).witness, Some(Witness::Tuple(vec![A, B, B, C])));
    }

    #[test]
    fn m3_partial_is_weak_not_additive() {
        let cs = fixture("m3_partial").unwrap();
        assert!(cs.related(A, B) && !cs.related(C, A) && !cs.related(C, B));
        assert!(check_weak(&cs).iter().all(AxiomReport::passed));
        assert!(!check_add(&cs).passed());
    }
}
