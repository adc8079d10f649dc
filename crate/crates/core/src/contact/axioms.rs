//! Checkers for the weak contact axioms, additivity, (D1) and its n-pair
//! generalization. Every checker returns the lexicographically first
//! witness in element-index order; `check_add` orders candidates by the
//! split `b + c` before the element `a` (see its docs).

use super::d2::check_d2;
use super::{Axiom, AxiomReport, ContactSemilattice, Witness};
use crate::bits::row_ones;

pub fn check_sym(cs: &ContactSemilattice) -> AxiomReport {
    match cs.contact().matrix().first_asymmetry() {
        // first_asymmetry may land on the unrelated side; report the related one.
        Some((a, b)) if cs.related(a, b) => AxiomReport::fail(Axiom::Sym, Witness::Tuple(vec![a, b])),
        Some((a, b)) => AxiomReport::fail(Axiom::Sym, Witness::Tuple(vec![b, a])),
        None => AxiomReport::pass(Axiom::Sym),
    }
}

pub fn check_emp(cs: &ContactSemilattice) -> AxiomReport {
    let z = cs.lattice().zero();
    let n = cs.size();
    (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .find(|&(a, b)| (a == z || b == z) && cs.related(a, b))
        .map_or(AxiomReport::pass(Axiom::Emp), |(a, b)| {
            AxiomReport::fail(Axiom::Emp, Witness::Tuple(vec![a, b]))
        })
}

pub fn check_ref(cs: &ContactSemilattice) -> AxiomReport {
    cs.lattice()
        .nonzero()
        .find(|&x| !cs.related(x, x))
        .map_or(AxiomReport::pass(Axiom::Ref), |x| {
            AxiomReport::fail(Axiom::Ref, Witness::Tuple(vec![x]))
        })
}

/// Upward closure in both arguments. Detection walks single cover steps,
/// which suffices in a finite order; the reported quadruple comes from a
/// full scan run only once a violation is known.
pub fn check_ext(cs: &ContactSemilattice) -> AxiomReport {
    let s = cs.lattice();
    let n = cs.size();
    let covers: Vec<Vec<usize>> = s.elements().map(|a| s.upper_covers(a)).collect();
    let violated = (0..n).any(|a| {
        row_ones(cs.contact().row(a)).any(|b| {
            covers[a].iter().any(|&a1| !cs.related(a1, b))
                || covers[b].iter().any(|&b1| !cs.related(a, b1))
        })
    });
    if !violated {
        return AxiomReport::pass(Axiom::Ext);
    }
    for a in 0..n {
        for b in row_ones(cs.contact().row(a)) {
            for a1 in s.elements().filter(|&x| s.leq(a, x)) {
                if let Some(b1) = s.elements().find(|&y| s.leq(b, y) && !cs.related(a1, y)) {
                    return AxiomReport::fail(Axiom::Ext, Witness::Tuple(vec![a, b, a1, b1]));
                }
            }
        }
    }
    unreachable!("cover scan found an Ext violation the full scan missed")
}

/// Sym, Emp, Ext and Ref, in that order.
pub fn check_weak(cs: &ContactSemilattice) -> [AxiomReport; 4] {
    [check_sym(cs), check_emp(cs), check_ext(cs), check_ref(cs)]
}

/// `a δ b + c` implies `a δ b` or `a δ c`.
///
/// Candidates are scanned with the split `(b, c)` outermost and `a`
/// innermost, so the witness is the failing triple whose split comes
/// first; it is still reported in the order `(a, b, c)`.
pub fn check_add(cs: &ContactSemilattice) -> AxiomReport {
    let s = cs.lattice();
    let n = cs.size();
    for b in 0..n {
        for c in 0..n {
            let row_sum = cs.contact().row(s.join(b, c));
            let row_b = cs.contact().row(b);
            let row_c = cs.contact().row(c);
            let hit = row_sum
                .iter()
                .zip(row_b)
                .zip(row_c)
                .enumerate()
                .find_map(|(wi, ((&x, &y), &z))| {
                    let w = x & !y & !z;
                    (w != 0).then(|| wi * 64 + w.trailing_zeros() as usize)
                });
            if let Some(a) = hit {
                return AxiomReport::fail(Axiom::Add, Witness::Tuple(vec![a, b, c]));
            }
        }
    }
    AxiomReport::pass(Axiom::Add)
}

/// Unrelated pairs `(c0, c1)` with `c0 <= c1` by index, zero included.
fn unrelated_pairs(cs: &ContactSemilattice) -> Vec<(usize, usize)> {
    let n = cs.size();
    (0..n)
        .flat_map(|a| (a..n).map(move |b| (a, b)))
        .filter(|&(a, b)| !cs.related(a, b))
        .collect()
}

/// From `b <= a + c0`, `b <= a + c1` and `c0` unrelated to `c1`, conclude
/// `b <= a`.
///
/// Equivalently `(a + c0)(a + c1) = a` for every `a` and unrelated pair,
/// which is what the detection pass tests using the meet table.
pub fn check_d1(cs: &ContactSemilattice) -> AxiomReport {
    let s = cs.lattice();
    let meets = s.meets();
    let n = cs.size();
    let pairs = unrelated_pairs(cs);
    let fails_at = |a: usize| {
        pairs
            .iter()
            .any(|&(c0, c1)| meets.get(s.join(a, c0), s.join(a, c1)) != a)
    };
    let Some(a) = (0..n).find(|&a| fails_at(a)) else {
        return AxiomReport::pass(Axiom::D1);
    };
    for b in (0..n).filter(|&b| !s.leq(b, a)) {
        for c0 in 0..n {
            if !s.leq(b, s.join(a, c0)) {
                continue;
            }
            if let Some(c1) = (0..n).find(|&c1| !cs.related(c0, c1) && s.leq(b, s.join(a, c1))) {
                return AxiomReport::fail(Axiom::D1, Witness::Tuple(vec![a, b, c0, c1]));
            }
        }
    }
    unreachable!("meet test found a D1 violation the direct scan missed")
}

/// All selector sums `base + c[1][f(1)] + .. + c[n][f(n)]`, deduplicated and
/// sorted.
pub(crate) fn selector_sums(
    cs: &ContactSemilattice,
    base: usize,
    pairs: &[(usize, usize)],
) -> Vec<usize> {
    let s = cs.lattice();
    let mut sums = vec![base];
    for &(c0, c1) in pairs {
        let mut next: Vec<usize> = sums
            .iter()
            .flat_map(|&x| [s.join(x, c0), s.join(x, c1)])
            .collect();
        next.sort_unstable();
        next.dedup();
        sums = next;
    }
    sums
}

/// The n-pair form of (D1) for every `1 <= n <= max_n`: if each pair is
/// δ-unrelated and `b <= a + c[1][f(1)] + .. + c[n][f(n)]` for every
/// selector `f`, then `b <= a`.
///
/// Pair lists are enumerated as multisets of unordered unrelated pairs
/// (orientation and order are absorbed by the selectors). Witnesses are
/// ordered by `n`, then the pair list, then `a`, then `b`.
pub fn check_d1plus(cs: &ContactSemilattice, max_n: usize) -> AxiomReport {
    let s = cs.lattice();
    let pool = unrelated_pairs(cs);
    let n = cs.size();
    for len in 1..=max_n {
        let mut idx = vec![0usize; len];
        if pool.is_empty() {
            break;
        }
        loop {
            let pairs: Vec<(usize, usize)> = idx.iter().map(|&i| pool[i]).collect();
            let free_sums = selector_sums(cs, s.zero(), &pairs);
            for a in 0..n {
                let sums: Vec<usize> = free_sums.iter().map(|&x| s.join(a, x)).collect();
                let lower = (0..n).find(|&b| !s.leq(b, a) && sums.iter().all(|&x| s.leq(b, x)));
                if let Some(b) = lower {
                    let mut sums = sums;
                    sums.sort_unstable();
                    sums.dedup();
                    return AxiomReport::fail(Axiom::D1Plus, Witness::Schema { a, b, pairs, sums });
                }
            }
            if !next_multiset(&mut idx, pool.len()) {
                break;
            }
        }
    }
    AxiomReport::pass(Axiom::D1Plus)
}

/// Advances a nondecreasing index sequence; false once exhausted.
fn next_multiset(idx: &mut [usize], k: usize) -> bool {
    for pos in (0..idx.len()).rev() {
        if idx[pos] + 1 < k {
            idx[pos] += 1;
            let v = idx[pos];
            for later in &mut idx[pos + 1..] {
                *later = v;
            }
            return true;
        }
    }
    false
}

/// Runs a single checker. `D1Plus` uses pair lists up to length 3.
pub fn check(cs: &ContactSemilattice, axiom: Axiom) -> AxiomReport {
    match axiom {
        Axiom::Sym => check_sym(cs),
        Axiom::Emp => check_emp(cs),
        Axiom::Ext => check_ext(cs),
        Axiom::Ref => check_ref(cs),
        Axiom::Add => check_add(cs),
        Axiom::D1 => check_d1(cs),
        Axiom::D1Plus => check_d1plus(cs, 3),
        Axiom::D2 => check_d2(cs),
    }
}

/// Re-evaluates the axiom directly at the report's witness. True iff the
/// witness is well-formed and really instantiates a failure.
pub fn reproduces(cs: &ContactSemilattice, report: &AxiomReport) -> bool {
    let s = cs.lattice();
    let n = cs.size();
    let r = |a: usize, b: usize| cs.related(a, b);
    let Some(w) = &report.witness else {
        return false;
    };
    let in_range = |xs: &[usize]| xs.iter().all(|&x| x < n);
    match (report.axiom, w) {
        (Axiom::Sym, Witness::Tuple(t)) if t.len() == 2 && in_range(t) => {
            r(t[0], t[1]) && !r(t[1], t[0])
        }
        (Axiom::Emp, Witness::Tuple(t)) if t.len() == 2 && in_range(t) => {
            r(t[0], t[1]) && (t[0] == s.zero() || t[1] == s.zero())
        }
        (Axiom::Ext, Witness::Tuple(t)) if t.len() == 4 && in_range(t) => {
            r(t[0], t[1]) && s.leq(t[0], t[2]) && s.leq(t[1], t[3]) && !r(t[2], t[3])
        }
        (Axiom::Ref, Witness::Tuple(t)) if t.len() == 1 && in_range(t) => {
            t[0] != s.zero() && !r(t[0], t[0])
        }
        (Axiom::Add, Witness::Tuple(t)) if t.len() == 3 && in_range(t) => {
            let (a, b, c) = (t[0], t[1], t[2]);
            r(a, s.join(b, c)) && !r(a, b) && !r(a, c)
        }
        (Axiom::D1, Witness::Tuple(t)) if t.len() == 4 && in_range(t) => {
            let (a, b, c0, c1) = (t[0], t[1], t[2], t[3]);
            s.leq(b, s.join(a, c0)) && s.leq(b, s.join(a, c1)) && !r(c0, c1) && !s.leq(b, a)
        }
        (Axiom::D1Plus, Witness::Schema { a, b, pairs, .. }) => {
            let (a, b) = (*a, *b);
            !pairs.is_empty()
                && in_range(&[a, b])
                && pairs.iter().all(|&(c0, c1)| c0 < n && c1 < n && !r(c0, c1))
                && all_selectors(pairs, |choice| s.leq(b, s.join(a, s.join_all(choice))))
                && !s.leq(b, a)
        }
        (Axiom::D2, Witness::Schema { a, b, pairs, .. }) => {
            let (a, b) = (*a, *b);
            in_range(&[a, b])
                && pairs.iter().all(|&(c0, c1)| c0 < n && c1 < n && !r(c0, c1))
                && all_selectors(pairs, |choice| {
                    let sum = s.join_all(choice);
                    s.leq(a, sum) || s.leq(b, sum)
                })
                && r(a, b)
        }
        _ => false,
    }
}

/// Whether `pred` holds for the chosen elements under every selector.
fn all_selectors(pairs: &[(usize, usize)], pred: impl Fn(Vec<usize>) -> bool) -> bool {
    (0u64..1 << pairs.len()).all(|f| {
        let choice = pairs
            .iter()
            .enumerate()
            .map(|(i, &(c0, c1))| if f >> i & 1 == 0 { c0 } else { c1 })
            .collect();
        pred(choice)
    })
}

#[cfg(test)]
mod tests {
    use super::super::tests::m3;
    use super::super::{overlap_contact, ContactRelation};
    use super::*;
    use crate::order::{names, powerset_algebra, JoinSemilattice};

    fn with_pairs(s: JoinSemilattice, pairs: &[(usize, usize)]) -> ContactSemilattice {
        let c = ContactRelation::from_pairs(s.size(), pairs.iter().copied());
        ContactSemilattice::new(s, c).unwrap()
    }

    /// Nonzero pairs of `s`, minus the listed unordered pairs.
    fn all_nonzero_except(s: JoinSemilattice, missing: &[(usize, usize)]) -> ContactSemilattice {
        let pairs: Vec<(usize, usize)> = s
            .nonzero()
            .flat_map(|a| s.nonzero().map(move |b| (a, b)))
            .filter(|&(a, b)| !missing.contains(&(a, b)) && !missing.contains(&(b, a)))
            .collect();
        with_pairs(s, &pairs)
    }

    // 0 a b c a+b a+c b+c 1 as bit patterns over {a, b, c}.
    fn b8() -> ContactSemilattice {
        all_nonzero_except(powerset_algebra(3).unwrap(), &[(4, 1), (4, 2)])
    }

    fn m3_delta() -> ContactSemilattice {
        all_nonzero_except(m3(), &[(2, 3)])
    }

    #[test]
    fn overlap_is_weak() {
        let cs = ContactSemilattice::with_overlap(m3());
        assert!(check_weak(&cs).iter().all(AxiomReport::passed));
    }

    #[test]
    fn emp_and_ref_failures() {
        let s = powerset_algebra(2).unwrap();
        let mut pairs: Vec<_> = overlap_contact(&s).pairs();
        pairs.push((0, 2));
        let cs = with_pairs(s.clone(), &pairs);
        let r = check_emp(&cs);
        assert_eq!(r.witness, Some(Witness::Tuple(vec![0, 2])));
        assert!(reproduces(&cs, &r));

        let cs = with_pairs(s, &[(1, 1), (3, 3), (1, 3), (2, 3)]);
        let r = check_ref(&cs);
        assert_eq!(r.witness, Some(Witness::Tuple(vec![2])));
        assert!(reproduces(&cs, &r));
    }

    #[test]
    fn ext_failure_is_lex_first() {
        // diamond with p δ p only among p's supersets missing p δ top
        let s = powerset_algebra(2).unwrap();
        let cs = with_pairs(s, &[(1, 1), (2, 2), (3, 3), (2, 3)]);
        let r = check_ext(&cs);
        assert_eq!(r.witness, Some(Witness::Tuple(vec![1, 1, 1, 3])));
        assert!(reproduces(&cs, &r));
    }

    #[test]
    fn add_on_m3_overlap_names_the_split_first() {
        let cs = ContactSemilattice::with_overlap(m3());
        let r = check_add(&cs);
        assert_eq!(r.witness, Some(Witness::Tuple(vec![3, 1, 2])));
        assert_eq!(r.describe(cs.lattice()), "add: FAIL witness (c,a,b)");
        assert!(reproduces(&cs, &r));
    }

    #[test]
    fn add_results_on_m3_delta_and_b8() {
        assert!(check_add(&m3_delta()).passed());
        let b8 = b8();
        let r = check_add(&b8);
        assert_eq!(r.witness, Some(Witness::Tuple(vec![4, 1, 2])));
    }

    #[test]
    fn d1_results() {
        let r = check_d1(&m3_delta());
        assert_eq!(r.witness, Some(Witness::Tuple(vec![1, 2, 2, 3])));
        assert!(reproduces(&m3_delta(), &r));
        assert!(check_d1(&b8()).passed());
    }

    #[test]
    fn d1plus_examples() {
        assert!(check_d1plus(&b8(), 3).passed());
        let r = check_d1plus(&m3_delta(), 1);
        assert!(!r.passed());
        assert!(reproduces(&m3_delta(), &r));
        // a chain has every nonzero pair overlapping; only zero pairs remain
        let chain = JoinSemilattice::from_order(names(&["0", "p", "q"]), 0, [(0, 1), (1, 2)])
            .unwrap();
        let cs = ContactSemilattice::with_overlap(chain);
        assert!(check_d1plus(&cs, 3).passed());
    }

    #[test]
    fn multiset_iteration_counts() {
        let mut idx = vec![0; 3];
        let mut count = 1;
        while next_multiset(&mut idx, 4) {
            count += 1;
        }
        assert_eq!(count, 20); // C(4 + 3 - 1, 3)
    }

    #[test]
    fn reproduces_rejects_passing_and_malformed() {
        let cs = b8();
        assert!(!reproduces(&cs, &AxiomReport::pass(Axiom::Add)));
        let bogus = AxiomReport::fail(Axiom::Add, Witness::Tuple(vec![1, 2, 4]));
        assert!(!reproduces(&cs, &bogus));
        let short = AxiomReport::fail(Axiom::D1, Witness::Tuple(vec![1]));
        assert!(!reproduces(&cs, &short));
    }
}
