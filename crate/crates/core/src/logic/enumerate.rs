//! Exhaustive enumeration of small weak contact semilattices.
//!
//! A finite join-semilattice with 0 is a lattice, so each isomorphism class
//! is generated once as a bounded poset on `0, a, b, .., 1` whose labelling
//! is a linear extension; the class representative is the labelling with
//! the smallest strict-order code. Contact relations on a lattice are the
//! symmetric relations that contain the overlap relation, avoid 0, and are
//! upward closed. Such a relation is fixed by which overlap-free nonzero
//! pairs it adds, and those additions form an up-set of pairs; they are
//! enumerated by bit pattern.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use crate::contact::{
    check_add, check_d1, check_d2, check_weak, overlap_contact, AxiomReport, ContactRelation,
    ContactSemilattice,
};
use crate::error::{Error, Result};
use crate::order::JoinSemilattice;

/// Largest size accepted by [`enumerate_structures`].
pub const DEFAULT_ENUMERATION_CAP: usize = 6;

/// Largest lattice size the generator supports.
pub const MAX_LATTICE_SIZE: usize = 8;

/// Largest size accepted by the all-matrices oracle.
pub const NAIVE_ORACLE_CAP: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Filter {
    Weak,
    Add,
    D1,
    D2,
}

impl Filter {
    pub fn as_str(self) -> &'static str {
        match self {
            Filter::Weak => "weak",
            Filter::Add => "add",
            Filter::D1 => "d1",
            Filter::D2 => "d2",
        }
    }

    pub fn passes(self, cs: &ContactSemilattice) -> bool {
        match self {
            Filter::Weak => check_weak(cs).iter().all(AxiomReport::passed),
            Filter::Add => check_add(cs).passed(),
            Filter::D1 => check_d1(cs).passed(),
            Filter::D2 => check_d2(cs).passed(),
        }
    }
}

impl fmt::Display for Filter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Filter {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "weak" => Ok(Filter::Weak),
            "add" => Ok(Filter::Add),
            "d1" => Ok(Filter::D1),
            "d2" => Ok(Filter::D2),
            other => Err(format!("unknown filter '{other}' (expected weak, add, d1 or d2)")),
        }
    }
}

fn permutations(m: usize) -> Vec<Vec<usize>> {
    if m == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(m - 1) {
        for slot in 0..m {
            let mut q = p.clone();
            q.insert(slot, m - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}

/// Strict-order pairs `(i, j)`, `i < j`, among `m` interior elements, in
/// lexicographic order; bit `k` of a code is pair `k`.
fn interior_pairs(m: usize) -> Vec<(usize, usize)> {
    (0..m)
        .flat_map(|i| (i + 1..m).map(move |j| (i, j)))
        .collect()
}

struct Candidate {
    up: Vec<u32>,
}

impl Candidate {
    fn new(m: usize, pairs: &[(usize, usize)], code: u64) -> Option<Self> {
        let rel = |i: usize, j: usize| code >> pair_index(m, i, j) & 1 == 1;
        for (i, j) in pairs.iter().copied() {
            if !rel(i, j) {
                continue;
            }
            for k in j + 1..m {
                if rel(j, k) && !rel(i, k) {
                    return None;
                }
            }
        }
        let n = m + 2;
        let top = n - 1;
        let mut up = vec![0u32; n];
        up[0] = (1 << n) - 1;
        up[top] = 1 << top;
        for i in 0..m {
            up[i + 1] = 1 << (i + 1) | 1 << top;
            for j in i + 1..m {
                if rel(i, j) {
                    up[i + 1] |= 1 << (j + 1);
                }
            }
        }
        let c = Candidate { up };
        c.is_lattice().then_some(c)
    }

    fn is_lattice(&self) -> bool {
        let n = self.up.len();
        (0..n).all(|a| {
            (a + 1..n).all(|b| {
                let ub = self.up[a] & self.up[b];
                (0..n).any(|x| ub >> x & 1 == 1 && ub & !self.up[x] == 0)
            })
        })
    }
}

fn pair_index(m: usize, i: usize, j: usize) -> usize {
    i * (2 * m - i - 1) / 2 + (j - i - 1)
}

/// Whether no relabelling that is still a linear extension gives a smaller
/// code.
fn is_canonical(code: u64, pairs: &[(usize, usize)], perms: &[Vec<usize>]) -> bool {
    let m = perms.first().map_or(0, Vec::len);
    'perm: for p in perms {
        let mut image = 0u64;
        for (k, &(i, j)) in pairs.iter().enumerate() {
            if code >> k & 1 == 1 {
                let (pi, pj) = (p[i], p[j]);
                if pi > pj {
                    continue 'perm;
                }
                image |= 1 << pair_index(m, pi, pj);
            }
        }
        if image < code {
            return false;
        }
    }
    true
}

fn element_names(n: usize) -> Vec<String> {
    match n {
        1 => vec!["0".to_string()],
        _ => std::iter::once("0".to_string())
            .chain((0..n - 2).map(|i| ((b'a' + i as u8) as char).to_string()))
            .chain(std::iter::once("1".to_string()))
            .collect(),
    }
}

fn generate_lattices(n: usize) -> Vec<JoinSemilattice> {
    if n == 1 {
        let s = JoinSemilattice::from_table(element_names(1), 0, vec![0]);
        return vec![s.expect("one-point semilattice")];
    }
    let m = n - 2;
    let pairs = interior_pairs(m);
    let perms = permutations(m);
    let mut out = Vec::new();
    for code in 0u64..1 << pairs.len() {
        let Some(c) = Candidate::new(m, &pairs, code) else {
            continue;
        };
        if !is_canonical(code, &pairs, &perms) {
            continue;
        }
        let le = (0..n).flat_map(|a| {
            let up = c.up[a];
            (0..n).filter(move |&b| up >> b & 1 == 1).map(move |b| (a, b))
        });
        let s = JoinSemilattice::from_order(element_names(n), 0, le)
            .expect("candidate is a lattice");
        out.push(s);
    }
    out
}

/// One representative per isomorphism class of join-semilattices with 0 of
/// exactly `n` elements, in increasing code order.
pub fn lattices_of_size(n: usize) -> Result<&'static [JoinSemilattice]> {
    static CACHE: [OnceLock<Vec<JoinSemilattice>>; MAX_LATTICE_SIZE + 1] =
        [const { OnceLock::new() }; MAX_LATTICE_SIZE + 1];
    if n == 0 || n > MAX_LATTICE_SIZE {
        return Err(Error::CapExceeded {
            requested: n,
            cap: MAX_LATTICE_SIZE,
        });
    }
    Ok(CACHE[n].get_or_init(|| generate_lattices(n)))
}

/// Every join-semilattice with 0 of size `1..=max_size`, one per
/// isomorphism class, ordered by size.
pub fn enumerate_lattices(max_size: usize) -> Result<Vec<&'static JoinSemilattice>> {
    let mut out = Vec::new();
    for n in 1..=max_size {
        out.extend(lattices_of_size(n)?);
    }
    Ok(out)
}

/// The overlap-free nonzero pairs of a lattice and, for each, the set of
/// pairs above it.
struct FreePairs {
    pairs: Vec<(usize, usize)>,
    above: Vec<u64>,
}

impl FreePairs {
    fn new(s: &JoinSemilattice) -> Result<Self> {
        let meets = s.meets();
        let nz: Vec<usize> = s.nonzero().collect();
        let pairs: Vec<(usize, usize)> = nz
            .iter()
            .enumerate()
            .flat_map(|(i, &a)| nz[i..].iter().map(move |&b| (a, b)))
            .filter(|&(a, b)| meets.get(a, b) == s.zero())
            .collect();
        if pairs.len() > 63 {
            return Err(Error::TooLarge {
                size: pairs.len(),
                cap: 63,
            });
        }
        let below = |(a, b): (usize, usize), (c, d): (usize, usize)| {
            (s.leq(a, c) && s.leq(b, d)) || (s.leq(a, d) && s.leq(b, c))
        };
        let above = pairs
            .iter()
            .map(|&p| {
                pairs
                    .iter()
                    .enumerate()
                    .filter(|&(_, &q)| below(p, q))
                    .fold(0u64, |m, (k, _)| m | 1 << k)
            })
            .collect();
        Ok(FreePairs { pairs, above })
    }

    fn is_up_set(&self, mask: u64) -> bool {
        (0..self.pairs.len()).all(|k| mask >> k & 1 == 0 || self.above[k] & !mask == 0)
    }

    fn index(&self, a: usize, b: usize) -> usize {
        let key = (a.min(b), a.max(b));
        self.pairs.iter().position(|&p| p == key).unwrap()
    }
}

/// Element permutations fixing 0 and 1 that preserve the order.
fn automorphisms(s: &JoinSemilattice) -> Vec<Vec<usize>> {
    let n = s.size();
    if n <= 2 {
        return vec![(0..n).collect()];
    }
    permutations(n - 2)
        .into_iter()
        .map(|p| {
            std::iter::once(0)
                .chain(p.iter().map(|&i| i + 1))
                .chain(std::iter::once(n - 1))
                .collect::<Vec<usize>>()
        })
        .filter(|f| (0..n).all(|a| (0..n).all(|b| s.leq(a, b) == s.leq(f[a], f[b]))))
        .collect()
}

/// The weak contact relations on `s`, by increasing bit pattern of the
/// added pairs; with `prune_iso` only the least pattern of each orbit
/// under the automorphisms of `s` is kept.
fn contact_relations(
    s: &'static JoinSemilattice,
    prune_iso: bool,
) -> Result<impl Iterator<Item = ContactSemilattice>> {
    let free = FreePairs::new(s)?;
    let base = overlap_contact(s).pairs();
    let images: Vec<Vec<usize>> = if prune_iso {
        automorphisms(s)
            .into_iter()
            .map(|f| free.pairs.iter().map(|&(a, b)| free.index(f[a], f[b])).collect())
            .collect()
    } else {
        vec![]
    };
    let count = free.pairs.len();
    let pairs = free.pairs.clone();
    Ok((0u64..1 << count)
        .filter(move |&mask| free.is_up_set(mask))
        .filter(move |&mask| {
            images.iter().all(|img| {
                let moved = (0..count)
                    .filter(|&k| mask >> k & 1 == 1)
                    .fold(0u64, |m, k| m | 1 << img[k]);
                moved >= mask
            })
        })
        .map(move |mask| {
            let added = (0..count)
                .filter(|&k| mask >> k & 1 == 1)
                .map(|k| pairs[k]);
            let contact = ContactRelation::from_pairs(s.size(), base.iter().copied().chain(added));
            ContactSemilattice::new(s.clone(), contact).expect("dimensions agree")
        }))
}

/// All weak contact semilattices of size `1..=max_size` passing `filters`.
pub fn enumerate_structures(
    max_size: usize,
    filters: &[Filter],
    prune_iso: bool,
) -> Result<impl Iterator<Item = ContactSemilattice>> {
    enumerate_structures_capped(max_size, filters, prune_iso, DEFAULT_ENUMERATION_CAP)
}

pub fn enumerate_structures_capped(
    max_size: usize,
    filters: &[Filter],
    prune_iso: bool,
    cap: usize,
) -> Result<impl Iterator<Item = ContactSemilattice>> {
    let cap = cap.min(MAX_LATTICE_SIZE);
    if max_size > cap {
        return Err(Error::CapExceeded {
            requested: max_size,
            cap,
        });
    }
    let mut streams = Vec::new();
    for s in enumerate_lattices(max_size)? {
        streams.push(contact_relations(s, prune_iso)?);
    }
    let filters = filters.to_vec();
    Ok(streams
        .into_iter()
        .flatten()
        .filter(move |cs| filters.iter().all(|f| f.passes(cs))))
}

/// Every symmetric relation on every lattice of size `1..=max_size`,
/// whether or not it satisfies any axiom.
pub fn all_symmetric_structures(max_size: usize) -> Result<impl Iterator<Item = ContactSemilattice>> {
    if max_size > NAIVE_ORACLE_CAP {
        return Err(Error::CapExceeded {
            requested: max_size,
            cap: NAIVE_ORACLE_CAP,
        });
    }
    Ok(enumerate_lattices(max_size)?.into_iter().flat_map(|s| {
        let n = s.size();
        let cells: Vec<(usize, usize)> = (0..n)
            .flat_map(|a| (a..n).map(move |b| (a, b)))
            .collect();
        (0u64..1 << cells.len()).map(move |mask| {
            let pairs = (0..cells.len())
                .filter(|&k| mask >> k & 1 == 1)
                .map(|k| cells[k]);
            ContactSemilattice::new(s.clone(), ContactRelation::from_pairs(n, pairs))
                .expect("dimensions agree")
        })
    }))
}

/// Count of structures of size `1..=max_size` found by trying every
/// symmetric matrix on every lattice and keeping those passing the weak
/// axioms and `filters`.
pub fn naive_structure_count(max_size: usize, filters: &[Filter]) -> Result<usize> {
    Ok(all_symmetric_structures(max_size)?
        .filter(|cs| Filter::Weak.passes(cs) && filters.iter().all(|f| f.passes(cs)))
        .count())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lattice_counts_match_known_values() {
        let counts: Vec<usize> = (1..=7).map(|n| lattices_of_size(n).unwrap().len()).collect();
        assert_eq!(counts, [1, 1, 1, 2, 5, 15, 53]);
    }

    #[test]
    fn size_two_weak_structures() {
        let all: Vec<_> = enumerate_structures(2, &[Filter::Weak], false).unwrap().collect();
        assert_eq!(all.len(), 2);
        assert_eq!(all[1].contact().pairs(), vec![(1, 1)]);
    }

    #[test]
    fn naive_oracle_agrees_up_to_four() {
        for n in 1..=4 {
            let fast = enumerate_structures(n, &[Filter::Weak], false).unwrap().count();
            assert_eq!(fast, naive_structure_count(n, &[]).unwrap(), "size {n}");
        }
    }

    #[test]
    fn filters_are_monotone() {
        for n in 1..=5 {
            let weak = enumerate_structures(n, &[], false).unwrap().count();
            let d1 = enumerate_structures(n, &[Filter::D1], false).unwrap().count();
            let d1d2 = enumerate_structures(n, &[Filter::D1, Filter::D2], false)
                .unwrap()
                .count();
            assert!(d1d2 <= d1 && d1 <= weak);
        }
    }

    #[test]
    fn pruning_keeps_one_per_orbit() {
        // M3: the atom pairs can be added in 2^3 ways, forming 4 orbits
        // under the permutations of the atoms
        let m3 = lattices_of_size(5)
            .unwrap()
            .iter()
            .find(|s| s.upper_covers(0).len() == 3)
            .unwrap();
        assert_eq!(contact_relations(m3, false).unwrap().count(), 8);
        assert_eq!(contact_relations(m3, true).unwrap().count(), 4);
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(
            enumerate_structures(7, &[], false).err(),
            Some(Error::CapExceeded { requested: 7, cap: 6 })
        ));
    }
}
