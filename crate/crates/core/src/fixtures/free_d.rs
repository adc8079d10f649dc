//! The join-semilattice generated by `c, d, e, f, x, y` subject to
//!
//! ```text
//! x <= c+e, x <= d+f, x <= c+d, x <= e+f,
//! y <= c+f, y <= d+e, y <= c+d, y <= e+f,
//! ```
//!
//! with `c` unrelated to `d`, `e` unrelated to `f`, and every other pair of
//! nonzero elements in contact. Elements are formal sums `w + b` with
//! `w ⊆ {x, y}` and `b ⊆ {c, d, e, f}`; a summand `x` (resp. `y`) is
//! dropped whenever `b` contains one of the pairs it lies below. The
//! structure is built by closing the generators under join with that
//! reduction.

use crate::contact::{ContactRelation, ContactSemilattice};
use crate::order::JoinSemilattice;

const X: u8 = 0b01;
const Y: u8 = 0b10;

// base bits
const C: u8 = 0b0001;
const D: u8 = 0b0010;
const E: u8 = 0b0100;
const F: u8 = 0b1000;

const X_PAIRS: [u8; 4] = [C | E, D | F, C | D, E | F];
const Y_PAIRS: [u8; 4] = [C | F, D | E, C | D, E | F];

/// A reduced formal sum: `extra ⊆ {x, y}` over `base ⊆ {c, d, e, f}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NormalFormElement {
    extra: u8,
    base: u8,
}

fn absorbs(base: u8, pairs: &[u8; 4]) -> bool {
    pairs.iter().any(|&p| p & !base == 0)
}

impl NormalFormElement {
    /// `extra` uses bit 0 for `x` and bit 1 for `y`; `base` uses bits 0..4
    /// for `c, d, e, f`. Returns `None` unless already reduced.
    pub fn new(extra: u8, base: u8) -> Option<Self> {
        let e = NormalFormElement { extra, base };
        (extra < 4 && base < 16 && e.reduce() == e).then_some(e)
    }

    pub fn extra(self) -> u8 {
        self.extra
    }

    pub fn base(self) -> u8 {
        self.base
    }

    fn reduce(self) -> Self {
        let mut extra = self.extra;
        if absorbs(self.base, &X_PAIRS) {
            extra &= !X;
        }
        if absorbs(self.base, &Y_PAIRS) {
            extra &= !Y;
        }
        NormalFormElement {
            extra,
            base: self.base,
        }
    }

    pub fn join(self, other: Self) -> Self {
        NormalFormElement {
            extra: self.extra | other.extra,
            base: self.base | other.base,
        }
        .reduce()
    }

    pub fn name(self) -> String {
        let mut parts = Vec::new();
        for (bit, n) in [(X, "x"), (Y, "y")] {
            if self.extra & bit != 0 {
                parts.push(n);
            }
        }
        for (bit, n) in [(C, "c"), (D, "d"), (E, "e"), (F, "f")] {
            if self.base & bit != 0 {
                parts.push(n);
            }
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join("+")
        }
    }
}

/// The `w + b <= z + a` criterion: `b <= a`, and every summand of `w`
/// missing from `z` is absorbed by `a`.
pub fn free_d_leq_oracle(lhs: NormalFormElement, rhs: NormalFormElement) -> bool {
    let base_below = lhs.base & !rhs.base == 0;
    let missing = lhs.extra & !rhs.extra;
    let x_ok = missing & X == 0 || absorbs(rhs.base, &X_PAIRS);
    let y_ok = missing & Y == 0 || absorbs(rhs.base, &Y_PAIRS);
    base_below && x_ok && y_ok
}

fn generators() -> [NormalFormElement; 7] {
    let g = |extra, base| NormalFormElement { extra, base };
    [g(0, 0), g(0, C), g(0, D), g(0, E), g(0, F), g(X, 0), g(Y, 0)]
}

/// All elements in discovery order: the generators `0, c, d, e, f, x, y`
/// first, then joins as the closure finds them.
pub fn free_d_elements() -> Vec<NormalFormElement> {
    let mut elems: Vec<NormalFormElement> = generators().to_vec();
    let mut i = 0;
    while i < elems.len() {
        for j in 0..=i {
            let k = elems[i].join(elems[j]);
            if !elems.contains(&k) {
                elems.push(k);
            }
        }
        i += 1;
    }
    elems
}

/// Elements spelled out by hand as `F` (all sums of `c, d, e, f`) plus the
/// `x`- and `y`-sums that survive reduction. It is kept only to compare
/// against the closure.
fn hand_listing() -> Vec<NormalFormElement> {
    let g = |extra, base| NormalFormElement { extra, base };
    let mut out: Vec<NormalFormElement> = (0..16).map(|b| g(0, b)).collect();
    for b in [0, C, D, E, F, D | E, C | F] {
        out.push(g(X, b));
    }
    for b in [0, D, C, F, E, C | E, D | F] {
        out.push(g(Y, b));
    }
    for b in [C, D, E, F] {
        out.push(g(X | Y, b));
    }
    out
}

/// Differences between the closure and the hand listing.
pub fn free_d_notes() -> Vec<String> {
    let closure = free_d_elements();
    let listed = hand_listing();
    let mut notes = vec![format!(
        "closure under join yields {} elements; the hand listing has {}",
        closure.len(),
        listed.len()
    )];
    for e in closure.iter().filter(|e| !listed.contains(e)) {
        notes.push(format!(
            "element {} is produced by the closure and not eliminated by any reduction rule, \
             but is missing from the hand listing",
            e.name()
        ));
    }
    for e in listed.iter().filter(|e| !closure.contains(e)) {
        notes.push(format!("listed element {} is not reachable by closure", e.name()));
    }
    notes
}

pub(crate) fn free_d() -> ContactSemilattice {
    let elems = free_d_elements();
    let n = elems.len();
    let index = |e: NormalFormElement| elems.iter().position(|&x| x == e).unwrap();
    let table = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .map(|(i, j)| index(elems[i].join(elems[j])))
        .collect();
    let names = elems.iter().map(|e| e.name()).collect();
    let s = JoinSemilattice::from_table(names, 0, table).expect("closure is a semilattice");

    let atom = |bit| index(NormalFormElement { extra: 0, base: bit });
    let unrelated = [(atom(C), atom(D)), (atom(E), atom(F))];
    let pairs: Vec<(usize, usize)> = s
        .nonzero()
        .flat_map(|a| s.nonzero().map(move |b| (a, b)))
        .filter(|&(a, b)| !unrelated.contains(&(a, b)) && !unrelated.contains(&(b, a)))
        .collect();
    ContactSemilattice::new(s, ContactRelation::from_pairs(n, pairs)).expect("dimensions agree")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nf(extra: u8, base: u8) -> NormalFormElement {
        NormalFormElement::new(extra, base).unwrap()
    }

    #[test]
    fn normal_form_rejects_reducible_sums() {
        assert!(NormalFormElement::new(X, C | E).is_none());
        assert!(NormalFormElement::new(Y, C | E).is_some());
        assert!(NormalFormElement::new(X | Y, C | D).is_none());
        assert!(NormalFormElement::new(X | Y, 0).is_some());
    }

    #[test]
    fn closure_has_thirty_five_elements() {
        let elems = free_d_elements();
        assert_eq!(elems.len(), 35);
        assert!(elems.contains(&nf(X | Y, 0)));
        assert_eq!(&elems[..7], &generators());
    }

    #[test]
    fn notes_flag_the_bare_x_plus_y() {
        let notes = free_d_notes();
        assert_eq!(notes.len(), 2);
        assert!(notes[0].contains("35") && notes[0].contains("34"));
        assert!(notes[1].contains("element x+y "));
    }

    #[test]
    fn oracle_examples() {
        // x+y <= x+c fails: y is not absorbed by c
        assert!(!free_d_leq_oracle(nf(X | Y, 0), nf(X, C)));
        assert!(free_d_leq_oracle(nf(X, 0), nf(0, C | E)));
        for e in free_d_elements() {
            assert!(free_d_leq_oracle(nf(0, 0), e));
        }
    }

    #[test]
    fn names_follow_formal_sums() {
        assert_eq!(nf(X | Y, C).name(), "x+y+c");
        assert_eq!(nf(0, 0).name(), "0");
        assert_eq!(nf(0, D | E).name(), "d+e");
    }
}
