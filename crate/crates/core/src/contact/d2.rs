//! Deciding (D2).
//!
//! An instance is a list of δ-unrelated pairs `(c_i0, c_i1)` and elements
//! `a, b` such that for every selector `f` either `a` or `b` lies below
//! `c_1f(1) + .. + c_nf(n)`; it demands `a` unrelated to `b`.
//!
//! Three procedures live here:
//!
//! * [`check_d2`] folds every unrelated nonzero pair into a single set of
//!   selector sums. Adding a pair replaces each sum `s` by `s + c0` and
//!   `s + c1`, both above `s`, so the set of covered `(a, b)` only grows
//!   with the pair list; the full pool therefore covers every pair any
//!   sub-list covers and one fold decides the whole schema.
//! * [`check_d2_subsets`] scans every subset of the pool and every selector
//!   (`3^p` work), aborting past a pair budget.
//! * [`check_d2_sequences`] enumerates raw pair sequences with repeats and
//!   both orientations, zero included, as an oracle for the other two.

use super::axioms::selector_sums;
use super::{Axiom, AxiomReport, ContactSemilattice, Witness};
use crate::error::{Error, Result};

/// Pool size above which the subset scan refuses to run.
pub const DEFAULT_D2_PAIR_LIMIT: usize = 16;

/// Unordered δ-unrelated pairs of nonzero elements, `c0 <= c1` by index.
///
/// Pairs with 0 are left out: a selector choosing 0 leaves the sum
/// unchanged, so such a pair neither adds nor removes coverage.
pub fn d2_pair_pool(cs: &ContactSemilattice) -> Vec<(usize, usize)> {
    let s = cs.lattice();
    let nz: Vec<usize> = s.nonzero().collect();
    let mut pool = Vec::new();
    for (i, &c0) in nz.iter().enumerate() {
        for &c1 in &nz[i..] {
            if !cs.related(c0, c1) {
                pool.push((c0, c1));
            }
        }
    }
    pool
}

fn covered(cs: &ContactSemilattice, sums: &[usize], a: usize, b: usize) -> bool {
    let s = cs.lattice();
    sums.iter().all(|&x| s.leq(a, x) || s.leq(b, x))
}

/// First related `(a, b)` (lexicographic) covered by the sums.
fn first_violation(cs: &ContactSemilattice, sums: &[usize]) -> Option<(usize, usize)> {
    let n = cs.size();
    (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .find(|&(a, b)| cs.related(a, b) && covered(cs, sums, a, b))
}

/// Decides (D2) for all `n`, including the empty instance (which is Emp).
///
/// The witness is the lexicographically first violating `(a, b)`; its pair
/// list is reduced to an inclusion-minimal sub-list by dropping pairs in
/// pool order while coverage survives.
pub fn check_d2(cs: &ContactSemilattice) -> AxiomReport {
    let zero = cs.lattice().zero();
    let pool = d2_pair_pool(cs);
    let sums = selector_sums(cs, zero, &pool);
    let Some((a, b)) = first_violation(cs, &sums) else {
        return AxiomReport::pass(Axiom::D2);
    };
    let mut pairs = pool;
    let mut i = 0;
    while i < pairs.len() {
        let mut trial = pairs.clone();
        trial.remove(i);
        if covered(cs, &selector_sums(cs, zero, &trial), a, b) {
            pairs = trial;
        } else {
            i += 1;
        }
    }
    let sums = selector_sums(cs, zero, &pairs);
    AxiomReport::fail(Axiom::D2, Witness::Schema { a, b, pairs, sums })
}

/// Decides (D2) by scanning every subset of the pair pool and, for each,
/// every selector function.
///
/// The witness is the lexicographically first violating `(a, b)` with the
/// first covering subset in bitmask order.
pub fn check_d2_subsets(cs: &ContactSemilattice, pair_limit: usize) -> Result<AxiomReport> {
    let s = cs.lattice();
    let pool = d2_pair_pool(cs);
    if pool.len() > pair_limit {
        return Err(Error::BudgetExceeded {
            pairs: pool.len(),
            limit: pair_limit,
        });
    }
    let n = cs.size();
    let mut best: Option<((usize, usize), u64)> = None;
    for mask in 0u64..1 << pool.len() {
        let chosen: Vec<(usize, usize)> = (0..pool.len())
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| pool[i])
            .collect();
        let mut sums: Vec<usize> = (0u64..1 << chosen.len())
            .map(|f| {
                s.join_all(
                    chosen
                        .iter()
                        .enumerate()
                        .map(|(i, &(c0, c1))| if f >> i & 1 == 0 { c0 } else { c1 }),
                )
            })
            .collect();
        sums.sort_unstable();
        sums.dedup();
        for a in 0..n {
            for b in 0..n {
                if best.is_some_and(|(ab, _)| ab <= (a, b)) {
                    break;
                }
                if cs.related(a, b) && covered(cs, &sums, a, b) {
                    best = Some(((a, b), mask));
                }
            }
        }
    }
    Ok(match best {
        None => AxiomReport::pass(Axiom::D2),
        Some(((a, b), mask)) => {
            let pairs: Vec<(usize, usize)> = (0..pool.len())
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| pool[i])
                .collect();
            let sums = selector_sums(cs, s.zero(), &pairs);
            AxiomReport::fail(Axiom::D2, Witness::Schema { a, b, pairs, sums })
        }
    })
}

/// Every related `(a, b)` refuted by some raw instance of length at most
/// `max_len`: ordered pairs, repeats allowed, zero allowed.
pub fn check_d2_sequences(cs: &ContactSemilattice, max_len: usize) -> Vec<(usize, usize)> {
    let s = cs.lattice();
    let n = cs.size();
    let ordered: Vec<(usize, usize)> = (0..n)
        .flat_map(|x| (0..n).map(move |y| (x, y)))
        .filter(|&(x, y)| !cs.related(x, y))
        .collect();
    let mut refuted = vec![false; n * n];
    let mut seq: Vec<usize> = Vec::new();
    loop {
        let pairs: Vec<(usize, usize)> = seq.iter().map(|&i| ordered[i]).collect();
        let sums: Vec<usize> = (0u64..1 << pairs.len())
            .map(|f| {
                s.join_all(
                    pairs
                        .iter()
                        .enumerate()
                        .map(|(i, &(c0, c1))| if f >> i & 1 == 0 { c0 } else { c1 }),
                )
            })
            .collect();
        for a in 0..n {
            for b in 0..n {
                if cs.related(a, b) && covered(cs, &sums, a, b) {
                    refuted[a * n + b] = true;
                }
            }
        }
        if !next_sequence(&mut seq, ordered.len(), max_len) {
            break;
        }
    }
    (0..n * n)
        .filter(|&i| refuted[i])
        .map(|i| (i / n, i % n))
        .collect()
}

/// Odometer over all sequences of length `0..=max_len` in shortlex order.
fn next_sequence(seq: &mut Vec<usize>, k: usize, max_len: usize) -> bool {
    if k == 0 {
        return false;
    }
    for pos in (0..seq.len()).rev() {
        if seq[pos] + 1 < k {
            seq[pos] += 1;
            for later in &mut seq[pos + 1..] {
                *later = 0;
            }
            return true;
        }
    }
    if seq.len() < max_len {
        let len = seq.len() + 1;
        seq.clear();
        seq.resize(len, 0);
        return true;
    }
    false
}
