//! Finite join-semilattices with a least element.
//!
//! Elements are dense indices `0..size`; names are carried only for
//! reporting. Two representations share one interface: an explicit join
//! table, and the full powerset of a small base where an element's index is
//! its membership bit pattern and join is bitwise or. The latter keeps
//! `powerset_algebra(20)` usable without a 2^40-entry table.

use std::borrow::Cow;
use std::hash::{Hash, Hasher};
use std::sync::OnceLock;

use crate::bits::Subset;
use crate::error::{Error, LawViolation, Result};

/// Default ceiling on `powerset_algebra` base sizes.
pub const DEFAULT_POWERSET_CAP: usize = 20;

#[derive(Clone, PartialEq, Eq)]
enum Repr {
    Table(Vec<u32>),
    Powerset(usize),
}

/// A validated finite join-semilattice with 0. Immutable once built.
#[derive(Clone)]
pub struct JoinSemilattice {
    size: usize,
    zero: usize,
    top: usize,
    names: Vec<String>,
    repr: Repr,
    meets: OnceLock<MeetTable>,
}

impl PartialEq for JoinSemilattice {
    fn eq(&self, other: &Self) -> bool {
        self.size == other.size
            && self.zero == other.zero
            && (self.repr == other.repr || self.same_joins(other))
            && (self.names == other.names || self.elements().all(|a| self.name(a) == other.name(a)))
    }
}

impl Eq for JoinSemilattice {}

impl Hash for JoinSemilattice {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.size.hash(state);
        self.zero.hash(state);
    }
}

impl std::fmt::Debug for JoinSemilattice {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("JoinSemilattice")
            .field("size", &self.size)
            .field("zero", &self.zero)
            .finish_non_exhaustive()
    }
}

impl JoinSemilattice {
    fn same_joins(&self, other: &Self) -> bool {
        let n = self.size;
        (0..n).all(|a| (0..n).all(|b| self.join(a, b) == other.join(a, b)))
    }

    /// Validates a join table given row-major as `table[a * size + b]`.
    ///
    /// On failure every violated law is reported once, with its
    /// lexicographically first witness.
    pub fn from_table(names: Vec<String>, zero: usize, table: Vec<usize>) -> Result<Self> {
        let size = names.len();
        if size == 0 {
            return Err(Error::MalformedTable("no elements".into()));
        }
        if table.len() != size * size {
            return Err(Error::MalformedTable(format!(
                "expected {} entries, found {}",
                size * size,
                table.len()
            )));
        }
        if zero >= size {
            return Err(Error::MalformedTable(format!("zero index {zero} out of range")));
        }
        if let Some(&bad) = table.iter().find(|&&v| v >= size) {
            return Err(Error::MalformedTable(format!("entry {bad} out of range")));
        }
        if let Some(dup) = first_duplicate(&names) {
            return Err(Error::MalformedTable(format!("duplicate element name `{dup}`")));
        }

        let j = |a: usize, b: usize| table[a * size + b];
        let mut violations = Vec::new();
        let pairs = || (0..size).flat_map(|a| (0..size).map(move |b| (a, b)));
        if let Some((a, b)) = pairs().find(|&(a, b)| j(a, b) != j(b, a)) {
            violations.push(LawViolation::Commutativity(a, b));
        }
        if let Some((a, b, c)) = pairs()
            .flat_map(|(a, b)| (0..size).map(move |c| (a, b, c)))
            .find(|&(a, b, c)| j(a, j(b, c)) != j(j(a, b), c))
        {
            violations.push(LawViolation::Associativity(a, b, c));
        }
        if let Some(a) = (0..size).find(|&a| j(a, a) != a) {
            violations.push(LawViolation::Idempotence(a));
        }
        if let Some(a) = (0..size).find(|&a| j(zero, a) != a) {
            violations.push(LawViolation::ZeroNotNeutral(a));
        }
        if !violations.is_empty() {
            return Err(Error::Validation(violations));
        }

        let top = (0..size).fold(zero, &j);
        Ok(JoinSemilattice {
            size,
            zero,
            top,
            names,
            repr: Repr::Table(table.into_iter().map(|v| v as u32).collect()),
            meets: OnceLock::new(),
        })
    }

    /// Builds a semilattice from an order given as `a <= b` pairs.
    ///
    /// The pairs are closed reflexively and transitively; joins are the
    /// least upper bounds, and any pair without one is rejected.
    pub fn from_order(
        names: Vec<String>,
        zero: usize,
        le: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        let size = names.len();
        if size == 0 {
            return Err(Error::MalformedTable("no elements".into()));
        }
        let mut up: Vec<Subset> = (0..size).map(|a| Subset::from_indices(size, [a])).collect();
        for (a, b) in le {
            if a >= size || b >= size {
                return Err(Error::MalformedTable(format!("order pair ({a}, {b}) out of range")));
            }
            up[a].insert(b);
        }
        // Warshall on rows: if b is above a then everything above b is too.
        for k in 0..size {
            let above_k = up[k].clone();
            for row in up.iter_mut() {
                if row.contains(k) {
                    *row = row.union(&above_k);
                }
            }
        }
        for a in 0..size {
            for b in up[a].iter() {
                if b != a && up[b].contains(a) {
                    return Err(Error::NotAntisymmetric(names[a].clone(), names[b].clone()));
                }
            }
        }
        if zero >= size {
            return Err(Error::MalformedTable(format!("zero index {zero} out of range")));
        }
        if up[zero].len() != size {
            return Err(Error::ZeroNotLeast(names[zero].clone()));
        }

        let mut table = vec![0; size * size];
        for a in 0..size {
            for b in a..size {
                let common = up[a].intersection(&up[b]);
                // The least upper bound is the common upper bound lying below
                // all the others.
                let lub = common.iter().find(|&u| common.is_subset(&up[u]));
                match lub {
                    Some(u) => {
                        table[a * size + b] = u;
                        table[b * size + a] = u;
                    }
                    None => {
                        return Err(Error::NoUniqueJoin(names[a].clone(), names[b].clone()))
                    }
                }
            }
        }
        Self::from_table(names, zero, table)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    /// The greatest element, the join of everything.
    pub fn top(&self) -> usize {
        self.top
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.size
    }

    pub fn nonzero(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.size).filter(move |&a| a != self.zero)
    }

    #[inline]
    pub fn join(&self, a: usize, b: usize) -> usize {
        match &self.repr {
            Repr::Table(t) => t[a * self.size + b] as usize,
            Repr::Powerset(_) => a | b,
        }
    }

    /// Join of an arbitrary family; the empty join is 0.
    pub fn join_all(&self, items: impl IntoIterator<Item = usize>) -> usize {
        items.into_iter().fold(self.zero, |acc, x| self.join(acc, x))
    }

    /// `a <= b` in the derived order, i.e. `a + b = b`.
    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.join(a, b) == b
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq(a, b)
    }

    pub fn name(&self, a: usize) -> Cow<'_, str> {
        match &self.repr {
            Repr::Powerset(k) => Cow::Owned(format!("{a:0k$b}", k = *k)),
            Repr::Table(_) => Cow::Borrowed(&self.names[a]),
        }
    }

    pub fn names(&self) -> Vec<String> {
        self.elements().map(|a| self.name(a).into_owned()).collect()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        match &self.repr {
            Repr::Powerset(k) => (name.len() == (*k).max(1))
                .then(|| usize::from_str_radix(name, 2).ok())
                .flatten()
                .filter(|&i| i < self.size),
            Repr::Table(_) => self.names.iter().position(|n| n == name),
        }
    }

    /// The base size when this is a powerset algebra.
    pub fn powerset_base(&self) -> Option<usize> {
        match self.repr {
            Repr::Powerset(k) => Some(k),
            Repr::Table(_) => None,
        }
    }

    /// Elements covering `a` (minimal among those strictly above it).
    pub fn upper_covers(&self, a: usize) -> Vec<usize> {
        if let Repr::Powerset(k) = self.repr {
            return (0..k).filter(|i| a >> i & 1 == 0).map(|i| a | 1 << i).collect();
        }
        let above: Vec<usize> = self.elements().filter(|&x| self.lt(a, x)).collect();
        above
            .iter()
            .copied()
            .filter(|&x| !above.iter().any(|&y| y != x && self.lt(y, x)))
            .collect()
    }

    /// The down-set of `a` as a subset of the element indices.
    pub fn down_set(&self, a: usize) -> Subset {
        Subset::from_indices(self.size, self.elements().filter(|&x| self.leq(x, a)))
    }

    /// The full join table, row-major.
    pub fn join_table(&self) -> Vec<usize> {
        self.elements()
            .flat_map(|a| self.elements().map(move |b| self.join(a, b)))
            .collect()
    }

    /// Greatest lower bounds of all pairs, computed once and cached. In a
    /// finite join-semilattice with 0 the meet of `a` and `b` is the join of
    /// their common lower bounds.
    pub fn meets(&self) -> &MeetTable {
        self.meets.get_or_init(|| self.compute_meets())
    }

    fn compute_meets(&self) -> MeetTable {
        let n = self.size;
        if self.powerset_base().is_some() {
            return MeetTable {
                size: n,
                table: self
                    .elements()
                    .flat_map(|a| self.elements().map(move |b| (a & b) as u32))
                    .collect(),
            };
        }
        let downs: Vec<Subset> = self.elements().map(|a| self.down_set(a)).collect();
        let mut table = vec![0u32; n * n];
        for a in 0..n {
            for b in a..n {
                let common = downs[a].intersection(&downs[b]);
                let m = self.join_all(common.iter());
                table[a * n + b] = m as u32;
                table[b * n + a] = m as u32;
            }
        }
        MeetTable { size: n, table }
    }

    /// Whether meet distributes over join; otherwise the lexicographically
    /// first `(a, b, c)` with `a(b + c) != ab + ac`.
    pub fn is_distributive(&self) -> Distributivity {
        let m = self.meets();
        let n = self.size;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let lhs = m.get(a, self.join(b, c));
                    let rhs = self.join(m.get(a, b), m.get(a, c));
                    if lhs != rhs {
                        return Distributivity::Fails(a, b, c);
                    }
                }
            }
        }
        Distributivity::Holds
    }

    /// The sub-semilattice on `members`, if they contain 0 and are closed
    /// under join. Returns the structure together with the kept indices in
    /// increasing order (new index `i` corresponds to `kept[i]`).
    pub fn restrict(&self, members: &[usize]) -> Option<(JoinSemilattice, Vec<usize>)> {
        let mut kept: Vec<usize> = members.to_vec();
        kept.sort_unstable();
        kept.dedup();
        let pos = |x: usize| kept.binary_search(&x).ok();
        let zero = pos(self.zero)?;
        let k = kept.len();
        let mut table = Vec::with_capacity(k * k);
        for &a in &kept {
            for &b in &kept {
                table.push(pos(self.join(a, b))?);
            }
        }
        let names = kept.iter().map(|&a| self.name(a).into_owned()).collect();
        let s = JoinSemilattice::from_table(names, zero, table).ok()?;
        Some((s, kept))
    }
}

/// Outcome of the distributivity probe.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Distributivity {
    Holds,
    Fails(usize, usize, usize),
}

impl Distributivity {
    pub fn holds(self) -> bool {
        self == Distributivity::Holds
    }
}

/// Materialized meet table.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MeetTable {
    size: usize,
    table: Vec<u32>,
}

impl MeetTable {
    #[inline]
    pub fn get(&self, a: usize, b: usize) -> usize {
        self.table[a * self.size + b] as usize
    }
}

/// The powerset of a `base_size`-element base under union, with the
/// default cap.
pub fn powerset_algebra(base_size: usize) -> Result<JoinSemilattice> {
    powerset_algebra_capped(base_size, DEFAULT_POWERSET_CAP)
}

pub fn powerset_algebra_capped(base_size: usize, cap: usize) -> Result<JoinSemilattice> {
    if base_size > cap || base_size >= usize::BITS as usize - 1 {
        return Err(Error::BaseTooLarge { base_size, cap });
    }
    let size = 1usize << base_size;
    Ok(JoinSemilattice {
        size,
        zero: 0,
        top: size - 1,
        names: Vec::new(),
        repr: Repr::Powerset(base_size),
        meets: OnceLock::new(),
    })
}

fn first_duplicate(names: &[String]) -> Option<&str> {
    let mut seen = std::collections::HashSet::new();
    names.iter().find(|n| !seen.insert(n.as_str())).map(String::as_str)
}

/// Convenience for tests and fixtures: names from string slices.
pub fn names<S: AsRef<str>>(items: &[S]) -> Vec<String> {
    items.iter().map(|s| s.as_ref().to_string()).collect()
}
