//! Embeddings of contact semilattices into finite powerset algebras.
//!
//! Every element `a` of `S` is sent to `φ(a) = {x ∈ S : a ≰ x}`, a join
//! preserving injection into the powerset of `S` (of `S ∖ {1}` in bounded
//! mode). The sets `φ(c) ∩ φ(d)` for unrelated `c, d` generate an ideal;
//! in a powerset algebra that ideal is the down-set of the union `U` of its
//! generators, so the quotient is the powerset of `S ∖ U` and the image of
//! `a` is `φ(a) ∖ U`. The quotient base is labelled by the source elements
//! that survive, which keeps certificates readable.
//!
//! With (D1) and (D2) the quotient under overlap contact receives an
//! embedding; with (D1) alone the same map embeds into the quotient under
//! the contact generated by the images of related pairs.

use std::fmt::Write as _;

use crate::bits::{BitMatrix, Subset};
use crate::contact::{
    check_d1, check_d2, check_weak, AxiomReport, ContactRelation, ContactSemilattice,
};
use crate::error::{Error, Result};
use crate::order::{powerset_algebra_capped, JoinSemilattice};

/// Source sizes above which [`brute_quotient_oracle`] refuses to run.
pub const DEFAULT_ORACLE_CAP: usize = 12;

/// Base of the ambient powerset: all elements, or all but the top.
pub fn phi_base(s: &JoinSemilattice, bounded: bool) -> Vec<usize> {
    s.elements()
        .filter(|&x| !(bounded && x == s.top()))
        .collect()
}

/// `φ(a)` as a subset of [`phi_base`] (positions in that list).
pub fn phi(s: &JoinSemilattice, a: usize, bounded: bool) -> Subset {
    let base = phi_base(s, bounded);
    Subset::from_indices(
        base.len(),
        base.iter()
            .enumerate()
            .filter(|&(_, &x)| !s.leq(a, x))
            .map(|(i, _)| i),
    )
}

/// The quotient construction, computed without checking any hypothesis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quotient {
    pub bounded: bool,
    /// Source elements forming the ambient base, in index order.
    pub base: Vec<usize>,
    /// `φ(a)` for every source element, over `base`.
    pub phi: Vec<Subset>,
    /// Union of the ideal generators, over `base`.
    pub removed: Subset,
    /// Positions of `base` outside `removed`; the quotient's base.
    pub kept: Vec<usize>,
    /// `φ(a) ∖ U`, re-indexed onto `kept`.
    pub kappa: Vec<Subset>,
}

pub fn quotient(cs: &ContactSemilattice, bounded: bool) -> Quotient {
    let s = cs.lattice();
    let base = phi_base(s, bounded);
    let phi: Vec<Subset> = s.elements().map(|a| phi(s, a, bounded)).collect();
    let mut removed = Subset::empty(base.len());
    for c in s.elements() {
        for d in c..s.size() {
            if !cs.related(c, d) {
                removed = removed.union(&phi[c].intersection(&phi[d]));
            }
        }
    }
    let kept: Vec<usize> = (0..base.len()).filter(|&i| !removed.contains(i)).collect();
    let kappa = phi.iter().map(|p| p.project(&kept)).collect();
    Quotient {
        bounded,
        base,
        phi,
        removed,
        kept,
        kappa,
    }
}

/// Contact on a powerset algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ContactKind {
    /// `x δ y` iff `x ∩ y ≠ ∅`.
    Overlap,
    /// Overlap, or some listed `(u, v)` fits inside `(x, y)` in either
    /// orientation.
    Generated(Vec<(Subset, Subset)>),
}

/// Largest base materialized by `to_contact_semilattice`; the contact
/// matrix is quadratic in `2^k`.
pub const MATERIALIZE_BASE_CAP: usize = 12;

/// The full powerset of a finite labelled base with a contact.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowersetContactAlgebra {
    pub labels: Vec<String>,
    pub kind: ContactKind,
}

impl PowersetContactAlgebra {
    pub fn base_size(&self) -> usize {
        self.labels.len()
    }

    pub fn related(&self, x: &Subset, y: &Subset) -> bool {
        if x.intersects(y) {
            return true;
        }
        match &self.kind {
            ContactKind::Overlap => false,
            ContactKind::Generated(pairs) => pairs.iter().any(|(u, v)| {
                (u.is_subset(x) && v.is_subset(y)) || (v.is_subset(x) && u.is_subset(y))
            }),
        }
    }

    /// Materializes all `2^k` elements with their contact matrix. Element
    /// indices are membership masks.
    pub fn to_contact_semilattice(&self) -> Result<ContactSemilattice> {
        let k = self.base_size();
        let lattice = powerset_algebra_capped(k, MATERIALIZE_BASE_CAP)?;
        let n = lattice.size();
        let sets: Vec<Subset> = (0..n).map(|m| Subset::from_mask(k, m as u64)).collect();
        let mut matrix = BitMatrix::new(n);
        for x in 0..n {
            for y in x..n {
                if self.related(&sets[x], &sets[y]) {
                    matrix.set(x, y, true);
                    matrix.set(y, x, true);
                }
            }
        }
        ContactSemilattice::new(lattice, ContactRelation::from_matrix(matrix)?)
    }
}

/// A structure the verifier can map into.
pub trait ContactTarget {
    type Elem: Clone + Eq;
    fn is_zero(&self, x: &Self::Elem) -> bool;
    fn join(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn related(&self, x: &Self::Elem, y: &Self::Elem) -> bool;
}

impl ContactTarget for PowersetContactAlgebra {
    type Elem = Subset;

    fn is_zero(&self, x: &Subset) -> bool {
        x.is_empty()
    }

    fn join(&self, x: &Subset, y: &Subset) -> Subset {
        x.union(y)
    }

    fn related(&self, x: &Subset, y: &Subset) -> bool {
        PowersetContactAlgebra::related(self, x, y)
    }
}

impl ContactTarget for ContactSemilattice {
    type Elem = usize;

    fn is_zero(&self, x: &usize) -> bool {
        *x == self.lattice().zero()
    }

    fn join(&self, x: &usize, y: &usize) -> usize {
        self.lattice().join(*x, *y)
    }

    fn related(&self, x: &usize, y: &usize) -> bool {
        ContactSemilattice::related(self, *x, *y)
    }
}

/// Per-property outcome of an embedding check; failures carry the first
/// offending source pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EmbeddingReport {
    pub zero_preserved: bool,
    pub join_failure: Option<(usize, usize)>,
    pub injectivity_failure: Option<(usize, usize)>,
    pub contact_failure: Option<(usize, usize)>,
}

impl EmbeddingReport {
    pub fn verified(&self) -> bool {
        self.zero_preserved
            && self.join_failure.is_none()
            && self.injectivity_failure.is_none()
            && self.contact_failure.is_none()
    }

    pub fn describe(&self, s: &JoinSemilattice) -> String {
        let pair = |p: Option<(usize, usize)>| match p {
            None => "pass".to_string(),
            Some((a, b)) => format!("FAIL at ({},{})", s.name(a), s.name(b)),
        };
        format!(
            "zero: {}\njoin: {}\ninjective: {}\ncontact: {}\n",
            if self.zero_preserved { "pass" } else { "FAIL" },
            pair(self.join_failure),
            pair(self.injectivity_failure),
            pair(self.contact_failure),
        )
    }
}

/// Exhaustively checks that `map` is a contact-semilattice embedding:
/// 0 goes to 0, joins are preserved, the map is injective, and `a δ b`
/// holds iff the images are related.
pub fn verify_map<T: ContactTarget>(
    source: &ContactSemilattice,
    target: &T,
    map: &[T::Elem],
) -> EmbeddingReport {
    let s = source.lattice();
    let n = s.size();
    assert_eq!(map.len(), n, "map must cover every source element");
    let pairs = || (0..n).flat_map(|a| (0..n).map(move |b| (a, b)));
    EmbeddingReport {
        zero_preserved: target.is_zero(&map[s.zero()]),
        join_failure: pairs().find(|&(a, b)| target.join(&map[a], &map[b]) != map[s.join(a, b)]),
        injectivity_failure: pairs().find(|&(a, b)| a < b && map[a] == map[b]),
        contact_failure: pairs()
            .find(|&(a, b)| source.related(a, b) != target.related(&map[a], &map[b])),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EmbedMode {
    Overlap,
    Weak,
}

impl EmbedMode {
    pub fn as_str(self) -> &'static str {
        match self {
            EmbedMode::Overlap => "overlap",
            EmbedMode::Weak => "weak",
        }
    }
}

/// A constructed embedding together with its independent verification.
#[derive(Debug, Clone)]
pub struct EmbeddingWitness {
    pub mode: EmbedMode,
    pub source: ContactSemilattice,
    pub quotient: Quotient,
    pub target: PowersetContactAlgebra,
    pub map: Vec<Subset>,
    pub report: EmbeddingReport,
}

impl EmbeddingWitness {
    pub fn base_labels(&self) -> &[String] {
        &self.target.labels
    }

    /// Re-runs the verification against the stored map and target.
    pub fn verify(&self) -> EmbeddingReport {
        verify_embedding(self)
    }

    /// The text certificate: base labels, one `map` line per source
    /// element, the target contact and a `verified` trailer.
    pub fn certificate(&self) -> String {
        let s = self.source.lattice();
        let labels = &self.target.labels;
        let removed: Vec<String> = self
            .quotient
            .removed
            .iter()
            .map(|i| s.name(self.quotient.base[i]).into_owned())
            .collect();
        let mut out = String::new();
        let _ = writeln!(out, "# contact semilattice embedding certificate");
        let _ = writeln!(out, "mode: {}", self.mode.as_str());
        let _ = writeln!(out, "bounded: {}", yes_no(self.quotient.bounded));
        let _ = writeln!(out, "source-size: {}", s.size());
        let _ = writeln!(out, "removed: {{{}}}", removed.join(", "));
        let _ = writeln!(out, "base-size: {}", labels.len());
        let _ = writeln!(out, "base: {}", labels.join(" "));
        for a in s.elements() {
            let _ = writeln!(out, "map {} -> {}", s.name(a), self.map[a].display_with(labels));
        }
        match &self.target.kind {
            ContactKind::Overlap => {
                let _ = writeln!(out, "contact overlap");
            }
            ContactKind::Generated(pairs) => {
                let _ = writeln!(out, "contact pairs:");
                for (u, v) in pairs {
                    let _ = writeln!(
                        out,
                        "  {} ~ {}",
                        u.display_with(labels),
                        v.display_with(labels)
                    );
                }
            }
        }
        let _ = writeln!(out, "verified: {}", yes_no(self.report.verified()));
        out
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn verify_embedding(witness: &EmbeddingWitness) -> EmbeddingReport {
    verify_map(&witness.source, &witness.target, &witness.map)
}

fn require(report: AxiomReport) -> Result<()> {
    if report.passed() {
        Ok(())
    } else {
        Err(Error::PreconditionFailed(Box::new(report)))
    }
}

fn require_weak_and_d1(cs: &ContactSemilattice) -> Result<()> {
    for r in check_weak(cs) {
        require(r)?;
    }
    require(check_d1(cs))
}

fn build(
    cs: &ContactSemilattice,
    bounded: bool,
    mode: EmbedMode,
    kind_for: impl FnOnce(&Quotient) -> ContactKind,
) -> EmbeddingWitness {
    let s = cs.lattice();
    let quotient = quotient(cs, bounded);
    let labels = quotient
        .kept
        .iter()
        .map(|&i| s.name(quotient.base[i]).into_owned())
        .collect();
    let target = PowersetContactAlgebra {
        labels,
        kind: kind_for(&quotient),
    };
    let map = quotient.kappa.clone();
    let report = verify_map(cs, &target, &map);
    EmbeddingWitness {
        mode,
        source: cs.clone(),
        quotient,
        target,
        map,
        report,
    }
}

/// Embeds a weak contact semilattice satisfying (D1) and (D2) into the
/// overlap powerset algebra on the quotient base.
///
/// The base is finite, so the target is also complete and atomic.
pub fn overlap_embed(cs: &ContactSemilattice, bounded: bool) -> Result<EmbeddingWitness> {
    require_weak_and_d1(cs)?;
    require(check_d2(cs))?;
    Ok(build(cs, bounded, EmbedMode::Overlap, |_| ContactKind::Overlap))
}

/// Embeds a weak contact semilattice satisfying (D1) into the quotient
/// powerset algebra with the contact generated by images of related pairs.
pub fn weak_embed(cs: &ContactSemilattice, bounded: bool) -> Result<EmbeddingWitness> {
    require_weak_and_d1(cs)?;
    Ok(build(cs, bounded, EmbedMode::Weak, |q| {
        ContactKind::Generated(generated_pairs(cs, &q.kappa))
    }))
}

/// `(κ(a), κ(b))` for related `a, b`, minus pairs that already overlap
/// and pairs dominated by another one. The contact they generate is
/// monotone in each pair, so neither removal changes it.
fn generated_pairs(cs: &ContactSemilattice, kappa: &[Subset]) -> Vec<(Subset, Subset)> {
    let mut pairs: Vec<(Subset, Subset)> = Vec::new();
    for (a, b) in cs.contact().pairs() {
        let (u, v) = (&kappa[a], &kappa[b]);
        if u.intersects(v) {
            continue;
        }
        let pair = if u <= v {
            (u.clone(), v.clone())
        } else {
            (v.clone(), u.clone())
        };
        pairs.push(pair);
    }
    pairs.sort();
    pairs.dedup();
    let dominated = |(u, v): &(Subset, Subset), (x, y): &(Subset, Subset)| {
        (x.is_subset(u) && y.is_subset(v)) || (x.is_subset(v) && y.is_subset(u))
    };
    pairs
        .iter()
        .filter(|p| !pairs.iter().any(|q| q != *p && dominated(p, q)))
        .cloned()
        .collect()
}

/// Brute-force construction of the same quotient by materializing every
/// subset of the base.
#[derive(Debug, Clone)]
pub struct QuotientOracle {
    pub bounded: bool,
    pub base_size: usize,
    /// Ideal generators `φ(c) ∩ φ(d)` as masks.
    pub generators: Vec<u64>,
    /// Membership of each mask in the generated ideal.
    pub ideal: Vec<bool>,
    /// Smallest mask in each mask's congruence class.
    pub class_of: Vec<u64>,
    pub class_count: usize,
    /// Class of `φ(a)` for every source element.
    pub kappa: Vec<u64>,
    /// Overlap contact of the quotient pulled back to the source:
    /// `[φ(a) ∩ φ(b)] ≠ 0`.
    pub contact: BitMatrix,
}

pub fn brute_quotient_oracle(cs: &ContactSemilattice, bounded: bool) -> Result<QuotientOracle> {
    brute_quotient_oracle_capped(cs, bounded, DEFAULT_ORACLE_CAP)
}

pub fn brute_quotient_oracle_capped(
    cs: &ContactSemilattice,
    bounded: bool,
    cap: usize,
) -> Result<QuotientOracle> {
    let s = cs.lattice();
    let n = s.size();
    if n > cap || n > 24 {
        return Err(Error::TooLarge { size: n, cap });
    }
    let base = phi_base(s, bounded);
    let m = base.len();
    let phi = |a: usize| -> u64 {
        base.iter()
            .enumerate()
            .filter(|&(_, &x)| !s.leq(a, x))
            .fold(0, |acc, (i, _)| acc | 1 << i)
    };
    let mut generators: Vec<u64> = Vec::new();
    for c in 0..n {
        for d in 0..n {
            if !cs.related(c, d) {
                generators.push(phi(c) & phi(d));
            }
        }
    }
    generators.sort_unstable();
    generators.dedup();

    // Ideal: all subsets of finite unions of generators.
    let size = 1usize << m;
    let mut unions = vec![false; size];
    unions[0] = true;
    let mut frontier = vec![0u64];
    while let Some(x) = frontier.pop() {
        for &g in &generators {
            let y = (x | g) as usize;
            if !unions[y] {
                unions[y] = true;
                frontier.push(y as u64);
            }
        }
    }
    let mut ideal = vec![false; size];
    for x in (0..size).filter(|&x| unions[x]) {
        // every submask of x
        let mut sub = x;
        loop {
            ideal[sub] = true;
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & x;
        }
    }

    // x ~ y iff x △ y lies in the ideal; classes are cosets of the ideal.
    let members: Vec<usize> = (0..size).filter(|&i| ideal[i]).collect();
    let mut class_of = vec![u64::MAX; size];
    let mut class_count = 0;
    for x in 0..size {
        if class_of[x] != u64::MAX {
            continue;
        }
        class_count += 1;
        for &i in &members {
            class_of[x ^ i] = x as u64;
        }
    }
    let kappa = (0..n).map(|a| class_of[phi(a) as usize]).collect();
    let mut contact = BitMatrix::new(n);
    for a in 0..n {
        for b in 0..n {
            contact.set(a, b, !ideal[(phi(a) & phi(b)) as usize]);
        }
    }
    Ok(QuotientOracle {
        bounded,
        base_size: m,
        generators,
        ideal,
        class_of,
        class_count,
        kappa,
        contact,
    })
}

impl QuotientOracle {
    /// Compares with the shortcut construction under the isomorphism
    /// `[x] ↦ x ∖ U`. Returns the first disagreement.
    pub fn agrees_with(&self, q: &Quotient) -> std::result::Result<(), String> {
        if q.bounded != self.bounded || q.base.len() != self.base_size {
            return Err("different ambient bases".into());
        }
        let u = q.removed.to_mask();
        for x in 0..self.ideal.len() as u64 {
            if self.ideal[x as usize] != (x & !u == 0) {
                return Err(format!("ideal membership differs at mask {x:#b}"));
            }
        }
        let expected_classes = 1usize << q.kept.len();
        if self.class_count != expected_classes {
            return Err(format!(
                "{} classes, shortcut base gives {expected_classes}",
                self.class_count
            ));
        }
        for x in 0..self.class_of.len() as u64 {
            let rep = self.class_of[x as usize];
            if rep & !u != x & !u {
                return Err(format!("class of {x:#b} is not determined by x ∖ U"));
            }
        }
        let lift = |k: &Subset| k.iter().fold(0u64, |acc, i| acc | 1 << q.kept[i]);
        for (a, k) in q.kappa.iter().enumerate() {
            let back = lift(k);
            if self.kappa[a] != self.class_of[back as usize] {
                return Err(format!("κ differs at element {a}"));
            }
        }
        let n = q.kappa.len();
        for a in 0..n {
            for b in 0..n {
                if self.contact.get(a, b) != q.kappa[a].intersects(&q.kappa[b]) {
                    return Err(format!("quotient contact differs at ({a}, {b})"));
                }
            }
        }
        Ok(())
    }
}
