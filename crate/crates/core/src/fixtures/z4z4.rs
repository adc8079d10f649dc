//! Subgroups of `Z4 × Z4` ordered by inclusion, with overlap contact.
//!
//! Group elements `(u, v)` are encoded as `4u + v`; a subgroup is the
//! 16-bit mask of its members. Two enumerations are provided so the count
//! can be cross-checked: filtering all subsets for closure under addition,
//! and closing every pair of generators.

use super::fixture;
use crate::contact::ContactSemilattice;
use crate::order::JoinSemilattice;
use crate::representation::{verify_map, EmbeddingReport};

fn add(g: usize, h: usize) -> usize {
    ((g / 4 + h / 4) % 4) * 4 + (g % 4 + h % 4) % 4
}

fn members(mask: u16) -> impl Iterator<Item = usize> {
    (0..16).filter(move |i| mask >> i & 1 == 1)
}

fn closed_under_addition(mask: u16) -> bool {
    members(mask).all(|g| members(mask).all(|h| mask >> add(g, h) & 1 == 1))
}

/// Every subset containing the identity and closed under addition (a
/// finite subset closed under the operation is a subgroup), sorted by
/// `(order, mask)`.
pub fn subgroups_by_filter() -> Vec<u16> {
    let mut out: Vec<u16> = (0..=u16::MAX)
        .filter(|&m| m & 1 == 1 && closed_under_addition(m))
        .collect();
    out.sort_by_key(|&m| (m.count_ones(), m));
    out
}

/// Subgroup generated by a set of elements.
fn generated(gens: &[usize]) -> u16 {
    let mut mask: u16 = 1;
    loop {
        let mut next = mask;
        for g in members(mask) {
            for &h in gens {
                next |= 1 << add(g, h);
            }
        }
        if next == mask {
            return mask;
        }
        mask = next;
    }
}

/// Every subgroup `⟨g, h⟩`, sorted by `(order, mask)`. Each subgroup of
/// `Z4 × Z4` needs at most two generators.
pub fn subgroups_by_generators() -> Vec<u16> {
    let mut out: Vec<u16> = (0..16)
        .flat_map(|g| (0..16).map(move |h| generated(&[g, h])))
        .collect();
    out.sort_by_key(|&m| (m.count_ones(), m));
    out.dedup();
    out
}

fn subgroup_name(mask: u16) -> String {
    let items: Vec<String> = members(mask).map(|g| format!("{}{}", g / 4, g % 4)).collect();
    format!("{{{}}}", items.join(","))
}

fn lattice(subgroups: &[u16]) -> JoinSemilattice {
    let n = subgroups.len();
    let index = |m: u16| subgroups.iter().position(|&x| x == m).unwrap();
    let table = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .map(|(i, j)| {
            let gens: Vec<usize> = members(subgroups[i] | subgroups[j]).collect();
            index(generated(&gens))
        })
        .collect();
    let names = subgroups.iter().map(|&m| subgroup_name(m)).collect();
    JoinSemilattice::from_table(names, 0, table).expect("subgroups form a lattice")
}

pub(crate) fn z4z4() -> ContactSemilattice {
    ContactSemilattice::with_overlap(lattice(&subgroups_by_filter()))
}

#[derive(Debug, Clone)]
pub struct Z4Report {
    pub count_by_filter: usize,
    pub count_by_generators: usize,
    /// Image subgroup masks of `0, a, b, c, 1`.
    pub images: Vec<u16>,
    pub embedding: EmbeddingReport,
}

impl Z4Report {
    pub fn verified(&self) -> bool {
        self.count_by_filter == self.count_by_generators && self.embedding.verified()
    }

    pub fn describe(&self) -> String {
        let labels = ["0", "a", "b", "c", "1"];
        let mut out = format!(
            "subgroups (filter): {}\nsubgroups (generators): {}\n",
            self.count_by_filter, self.count_by_generators
        );
        for (l, &m) in labels.iter().zip(&self.images) {
            out.push_str(&format!("map {l} -> {}\n", subgroup_name(m)));
        }
        let m3 = fixture("m3_delta").expect("fixture exists");
        out.push_str(&self.embedding.describe(m3.lattice()));
        out.push_str(&format!(
            "verified: {}\n",
            if self.verified() { "yes" } else { "no" }
        ));
        out
    }
}

/// Maps `m3_delta` into the subgroup lattice: `a` to the pairs with even
/// difference, `b` to `Z4 × {0}`, `c` to `{0} × Z4`, and checks the map is
/// an embedding for the overlap contact.
pub fn verify_z4z4_embedding() -> Z4Report {
    let by_filter = subgroups_by_filter();
    let by_generators = subgroups_by_generators();
    let target = ContactSemilattice::with_overlap(lattice(&by_filter));
    let source = fixture("m3_delta").expect("fixture exists");

    let mask_of = |pred: &dyn Fn(usize, usize) -> bool| -> u16 {
        (0..16)
            .filter(|&g| pred(g / 4, g % 4))
            .fold(0, |m, g| m | 1 << g)
    };
    let even_difference = mask_of(&|u, v| (u + 4 - v) % 2 == 0);
    let first_axis = mask_of(&|_, v| v == 0);
    let second_axis = mask_of(&|u, _| u == 0);
    let images = vec![1, even_difference, first_axis, second_axis, u16::MAX];

    let index = |m: u16| by_filter.iter().position(|&x| x == m);
    let map: Vec<usize> = images
        .iter()
        .map(|&m| index(m).expect("image is a subgroup"))
        .collect();
    Z4Report {
        count_by_filter: by_filter.len(),
        count_by_generators: by_generators.len(),
        images,
        embedding: verify_map(&source, &target, &map),
    }
}
