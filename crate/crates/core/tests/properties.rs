use proptest::prelude::*;

use csl_core::contact::{
    check, check_d1, check_d2, check_d2_sequences, check_d2_subsets, reproduces, Axiom,
    ContactSemilattice, DEFAULT_D2_PAIR_LIMIT,
};
use csl_core::fixtures::fixture;
use csl_core::logic::{
    all_symmetric_structures, enumerate_structures, parse_sentence, refute_with,
    CountermodelResult, Filter, Formula, Relation, SearchOptions, Sentence, Term, Theory,
};
use csl_core::structure_file::{parse_structure, print_structure};

fn symmetric_structures() -> Vec<ContactSemilattice> {
    all_symmetric_structures(4).unwrap().collect()
}

fn term(vars: usize) -> impl Strategy<Value = Term> {
    let leaf = prop_oneof![(0..vars).prop_map(Term::Var), Just(Term::Zero)];
    leaf.prop_recursive(3, 8, 2, |inner| {
        (inner.clone(), inner).prop_map(|(l, r)| Term::Join(Box::new(l), Box::new(r)))
    })
}

fn formula(vars: usize) -> impl Strategy<Value = Formula> {
    let relation = prop_oneof![Just(Relation::Leq), Just(Relation::Eq), Just(Relation::Contact)];
    let atom = (relation, term(vars), term(vars)).prop_map(|(r, a, b)| Formula::Atom(r, a, b));
    atom.prop_recursive(3, 12, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(|f| Formula::Not(Box::new(f))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::And(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::Or(Box::new(a), Box::new(b))),
            (inner.clone(), inner).prop_map(|(a, b)| Formula::Implies(Box::new(a), Box::new(b))),
        ]
    })
}

fn sentence() -> impl Strategy<Value = Sentence> {
    (1usize..=4).prop_flat_map(|k| {
        formula(k).prop_map(move |matrix| Sentence {
            variables: ["a", "b", "c", "d"][..k].iter().map(|s| s.to_string()).collect(),
            matrix,
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn sentence_display_round_trips(s in sentence()) {
        let text = s.to_string();
        prop_assert_eq!(parse_sentence(&text).unwrap(), s, "{}", text);
    }

    #[test]
    fn structure_files_round_trip(index in 0usize..2122) {
        let all = symmetric_structures();
        let cs = &all[index % all.len()];
        prop_assert_eq!(&parse_structure(&print_structure(cs)).unwrap(), cs);
    }
}

#[test]
fn enumerated_structures_round_trip() {
    for cs in enumerate_structures(5, &[], false).unwrap() {
        assert_eq!(parse_structure(&print_structure(&cs)).unwrap(), cs);
    }
}

#[test]
fn failure_witnesses_reproduce() {
    for cs in symmetric_structures() {
        for axiom in Axiom::ALL {
            let report = check(&cs, axiom);
            if !report.passed() {
                assert!(reproduces(&cs, &report), "{axiom}:\n{}", print_structure(&cs));
            }
        }
    }
}

#[test]
fn d1_and_d2_models_are_closed_under_substructures() {
    for cs in enumerate_structures(5, &[Filter::D1, Filter::D2], false).unwrap() {
        let n = cs.size();
        let zero = cs.lattice().zero();
        for mask in 0u32..(1 << n) {
            let members: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1 || i == zero).collect();
            if let Some((sub, _)) = cs.restrict(&members) {
                assert!(check_d1(&sub).passed(), "{}", print_structure(&sub));
                assert!(check_d2(&sub).passed(), "{}", print_structure(&sub));
            }
        }
    }
}

#[test]
fn free_d_generators_span_a_boolean_algebra() {
    let cs = fixture("free_d").unwrap();
    let s = cs.lattice();
    let mut members: Vec<usize> = ["0", "c", "d", "e", "f"]
        .iter()
        .map(|n| s.index_of(n).unwrap())
        .collect();
    loop {
        let mut grown = members.clone();
        for &a in &members {
            for &b in &members {
                let j = s.join(a, b);
                if !grown.contains(&j) {
                    grown.push(j);
                }
            }
        }
        if grown.len() == members.len() {
            break;
        }
        members = grown;
    }
    let (sub, kept) = cs.restrict(&members).unwrap();
    assert_eq!(sub.size(), 16);
    let generators: Vec<usize> = ["c", "d", "e", "f"].iter().map(|n| s.index_of(n).unwrap()).collect();
    let image = |mask: usize| s.join_all((0..4).filter(|i| mask >> i & 1 == 1).map(|i| generators[i]));
    for x in 0..16 {
        assert!(kept.contains(&image(x)));
        for y in 0..16 {
            assert_eq!(x & !y == 0, s.leq(image(x), image(y)), "{x:04b} {y:04b}");
        }
    }
}

#[test]
fn pruning_does_not_change_refutation_outcomes() {
    let sentences = [
        "forall a b c. a C (b+c) -> (a C b | a C c)",
        "forall a. a = 0",
        "forall a b. a C b -> a = b",
        "forall a b. a <= b | b <= a",
    ];
    for text in sentences {
        let s = parse_sentence(text).unwrap();
        for theory in [Theory::D1, Theory::D1D2] {
            let outcome = |prune_iso| {
                let options = SearchOptions { prune_iso, ..SearchOptions::default() };
                refute_with(&s, theory, 4, options).unwrap()
            };
            let (plain, pruned) = (outcome(false), outcome(true));
            assert_eq!(plain.is_found(), pruned.is_found(), "{text} / {theory}");
            if let (
                CountermodelResult::Found { structure: a, .. },
                CountermodelResult::Found { structure: b, .. },
            ) = (&plain, &pruned)
            {
                assert_eq!(a.size(), b.size(), "{text} / {theory}");
            }
        }
    }
}

#[test]
fn d2_deciders_agree() {
    for cs in symmetric_structures() {
        let fold = check_d2(&cs).passed();
        let subsets = check_d2_subsets(&cs, DEFAULT_D2_PAIR_LIMIT).unwrap().passed();
        let sequences = check_d2_sequences(&cs, 3).is_empty();
        assert_eq!((fold, fold), (subsets, sequences), "{}", print_structure(&cs));
    }
}
